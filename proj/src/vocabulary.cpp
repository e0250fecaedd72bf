#include "eventqa/vocabulary.hpp"

#include <algorithm>

namespace eventqa {

namespace {

bool safe_local(std::string_view local) {
  if (local.empty() || local.back() == '.' || local.front() == '.' || local.front() == '-') {
    return false;
  }
  return std::all_of(local.begin(), local.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return u >= 0x80 || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
  });
}

}  // namespace

const PrefixTable& PrefixTable::standard() {
  static const PrefixTable table = [] {
    PrefixTable t;
    t.add("rdf", std::string(ns::rdf));
    t.add("rdfs", std::string(ns::rdfs));
    t.add("owl", std::string(ns::owl));
    t.add("xsd", std::string(ns::xsd));
    t.add("sem", std::string(ns::sem));
    t.add("dbo", std::string(ns::dbo));
    t.add("dbp", std::string(ns::dbp));
    t.add("dbr", std::string(ns::dbr));
    t.add("eventKG-s", std::string(ns::eventkg_schema));
    t.add("eventKG-r", std::string(ns::eventkg_resource));
    return t;
  }();
  return table;
}

void PrefixTable::add(std::string prefix, std::string namespace_iri) {
  for (auto& [p, n] : entries_) {
    if (p == prefix) {
      n = std::move(namespace_iri);
      return;
    }
  }
  entries_.emplace_back(std::move(prefix), std::move(namespace_iri));
}

std::optional<std::string> PrefixTable::abbreviate(std::string_view full) const {
  // Longest namespace wins (dbo vs. a hypothetical dbo sub-namespace).
  const std::pair<std::string, std::string>* best = nullptr;
  for (const auto& entry : entries_) {
    if (full.starts_with(entry.second) &&
        (best == nullptr || entry.second.size() > best->second.size())) {
      best = &entry;
    }
  }
  if (best == nullptr) return std::nullopt;
  auto local = full.substr(best->second.size());
  if (!safe_local(local)) return std::nullopt;
  return best->first + ":" + std::string(local);
}

std::optional<std::string> PrefixTable::expand(std::string_view prefixed) const {
  auto colon = prefixed.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  auto ns_iri = namespace_of(prefixed.substr(0, colon));
  if (!ns_iri) return std::nullopt;
  return *ns_iri + std::string(prefixed.substr(colon + 1));
}

std::optional<std::string> PrefixTable::namespace_of(std::string_view prefix) const {
  for (const auto& [p, n] : entries_) {
    if (p == prefix) return n;
  }
  return std::nullopt;
}

std::string_view local_name(std::string_view full_iri) {
  auto pos = full_iri.find_last_of("#/");
  if (pos == std::string_view::npos) return full_iri;
  return full_iri.substr(pos + 1);
}

}  // namespace eventqa
