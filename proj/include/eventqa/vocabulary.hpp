#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eventqa {

namespace ns {
inline constexpr std::string_view rdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view rdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view owl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view xsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view sem = "http://semanticweb.cs.vu.nl/2009/11/sem/";
inline constexpr std::string_view dbo = "http://dbpedia.org/ontology/";
inline constexpr std::string_view dbp = "http://dbpedia.org/property/";
inline constexpr std::string_view dbr = "http://dbpedia.org/resource/";
inline constexpr std::string_view eventkg_schema = "http://eventKG.l3s.uni-hannover.de/schema/";
inline constexpr std::string_view eventkg_resource = "http://eventKG.l3s.uni-hannover.de/resource/";
}  // namespace ns

/// Concatenates a namespace and a local name.
inline std::string iri(std::string_view ns, std::string_view local) {
  std::string out;
  out.reserve(ns.size() + local.size());
  out.append(ns).append(local);
  return out;
}

namespace vocab {
inline const std::string rdf_type = iri(ns::rdf, "type");
inline const std::string rdf_subject = iri(ns::rdf, "subject");
inline const std::string rdf_object = iri(ns::rdf, "object");
inline const std::string rdfs_label = iri(ns::rdfs, "label");
inline const std::string owl_same_as = iri(ns::owl, "sameAs");
inline const std::string sem_role_type = iri(ns::sem, "roleType");
inline const std::string sem_event = iri(ns::sem, "Event");
inline const std::string sem_core = iri(ns::sem, "Core");
inline const std::string sem_begin = iri(ns::sem, "hasBeginTimeStamp");
inline const std::string sem_end = iri(ns::sem, "hasEndTimeStamp");
inline const std::string dbo_event = iri(ns::dbo, "Event");
inline const std::string xsd_integer = iri(ns::xsd, "integer");
inline const std::string xsd_date = iri(ns::xsd, "date");
inline const std::string xsd_gyear = iri(ns::xsd, "gYear");
inline const std::string xsd_string = iri(ns::xsd, "string");
}  // namespace vocab

/// Prefix table used at the text layer (SPARQL, schema files, Turtle).
class PrefixTable {
 public:
  /// rdf, rdfs, owl, xsd, sem, dbo, dbp, dbr, eventKG-s, eventKG-r.
  static const PrefixTable& standard();

  void add(std::string prefix, std::string namespace_iri);

  /// Abbreviates to `prefix:local` when a namespace matches and the local part is
  /// a safe prefixed-name local; otherwise nullopt.
  [[nodiscard]] std::optional<std::string> abbreviate(std::string_view full) const;
  /// Expands `prefix:local`; nullopt for an unknown prefix.
  [[nodiscard]] std::optional<std::string> expand(std::string_view prefixed) const;
  [[nodiscard]] std::optional<std::string> namespace_of(std::string_view prefix) const;

  [[nodiscard]] const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Text after the last '#' or '/' of an IRI.
std::string_view local_name(std::string_view full_iri);

}  // namespace eventqa
