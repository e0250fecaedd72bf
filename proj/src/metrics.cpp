#include "eventqa/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "eventqa/text.hpp"
#include "eventqa/vocabulary.hpp"

namespace eventqa {

double complexity(std::span<const SemanticQuery> queries) {
  if (queries.empty()) throw EmptySet();
  std::uint64_t total = 0;
  for (const auto& q : queries) total += relation_count(q);
  return static_cast<double>(static_cast<long double>(total) / static_cast<long double>(queries.size()));
}

namespace {

// Pair similarities stay in long double until the final mean, so worked values
// round once.
long double jaccard_exact(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::size_t common = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  const std::size_t united = a.size() + b.size() - common;
  return united == 0 ? 0.0L : static_cast<long double>(common) / united;
}

long double cosine_exact(const TermVector& a, const TermVector& b) {
  if (a.empty() || b.empty()) return 0.0L;
  std::uint64_t dot = 0;
  std::uint64_t na = 0;
  std::uint64_t nb = 0;
  for (const auto& [t, f] : a) {
    na += std::uint64_t{f} * f;
    if (auto it = b.find(t); it != b.end()) dot += std::uint64_t{f} * it->second;
  }
  for (const auto& [t, f] : b) nb += std::uint64_t{f} * f;
  if (dot == 0) return 0.0L;
  if (na == nb && dot == na) return 1.0L;
  const long double c = static_cast<long double>(dot) / std::sqrt(static_cast<long double>(na) * nb);
  return std::min<long double>(c, 1);
}

}  // namespace

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  return static_cast<double>(jaccard_exact(a, b));
}

double query_similarity(const SemanticQuery& a, const SemanticQuery& b) {
  return jaccard(element_set(a), element_set(b));
}

namespace {

// 1 - mean over unordered pairs, summed in pair-index order.
template <class Similarity>
double pairwise_diversity(std::size_t n, Similarity similarity) {
  long double sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) sum += similarity(i, j);
  }
  const long double pairs = static_cast<long double>(n) * static_cast<long double>(n - 1) / 2;
  return static_cast<double>(1 - sum / pairs);
}

}  // namespace

double query_diversity(std::span<const SemanticQuery> queries) {
  if (queries.empty()) throw EmptySet();
  if (queries.size() == 1) throw SingletonSet();
  std::vector<std::set<std::string>> sets;
  sets.reserve(queries.size());
  for (const auto& q : queries) sets.push_back(element_set(q));
  return pairwise_diversity(sets.size(), [&](std::size_t i, std::size_t j) { return jaccard_exact(sets[i], sets[j]); });
}

TermVector tokenize(std::string_view text, std::string_view) {
  TermVector out;
  for (auto& w : split_words(text)) ++out[std::move(w)];
  return out;
}

double verbalization_similarity(const TermVector& a, const TermVector& b) {
  return static_cast<double>(cosine_exact(a, b));
}

double verbalization_diversity(std::span<const std::string> texts, std::string_view language) {
  std::vector<TermVector> vectors;
  for (const auto& t : texts) {
    if (!t.empty()) vectors.push_back(tokenize(t, language));
  }
  if (vectors.empty()) throw MissingLanguage(language);
  if (vectors.size() == 1) throw SingletonSet();
  return pairwise_diversity(vectors.size(), [&](std::size_t i, std::size_t j) {
    return cosine_exact(vectors[i], vectors[j]);
  });
}

DatasetStats dataset_stats(std::span<const SemanticQuery> queries, const KnowledgeGraph* kg,
                           std::span<const AnswerSet> answers) {
  DatasetStats s;
  std::map<std::string, std::size_t> frequency;
  auto graph_event = [&](const std::string& iri, bool via_same_as) {
    if (via_same_as) {
      const auto nodes = kg->nodes_same_as(iri);
      return std::any_of(nodes.begin(), nodes.end(), [&](NodeIndex n) { return kg->is_event(n); });
    }
    auto n = kg->find_node(iri);
    return n && kg->is_event(*n);
  };
  auto add = [&](const std::string& iri, bool via_same_as, bool event_hint) {
    const bool event = kg != nullptr ? graph_event(iri, via_same_as) : event_hint;
    (event ? s.events : s.entities).insert(iri);
  };
  auto event_variable = [&](const Variable& v) {
    if (v.name.starts_with("event")) return true;
    return v.type == vocab::dbo_event || v.type == vocab::sem_event;
  };
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const auto& q = queries[i];
    for (const auto& r : q.graph.relations) {
      if (!r.predicate.empty()) {
        s.predicates.insert(r.predicate);
        ++frequency[r.predicate];
      }
      for (const auto* t : {&r.subject, &r.object}) {
        if (t->is_node()) add(t->value, t->via_same_as, false);
      }
    }
    if (q.constraint && !q.constraint->relation && q.constraint->term.is_node()) {
      add(q.constraint->term.value, q.constraint->term.via_same_as, false);
    }
    for (const auto& v : q.graph.variables) {
      if (v.role == VariableRole::node && !v.bound_to.empty()) add(v.bound_to, false, event_variable(v));
      if (i < answers.size()) {
        for (const auto& b : answers[i].bindings) {
          if (b.is_iri()) add(b.value, false, event_variable(v));
        }
      }
    }
  }
  s.predicate_ranking.assign(frequency.begin(), frequency.end());
  std::stable_sort(s.predicate_ranking.begin(), s.predicate_ranking.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return s;
}

}  // namespace eventqa
