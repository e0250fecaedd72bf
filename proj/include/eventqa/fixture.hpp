#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "eventqa/kg.hpp"
#include "eventqa/query.hpp"
#include "eventqa/term.hpp"

namespace eventqa {

/// Synthetic event graph in two aligned variants: an EventKG-style reified graph
/// (statement nodes with roleType, owl:sameAs links into dbr:) and a DBpedia-style
/// direct graph over the dbr: names. Some nodes deliberately lack a same-as link and
/// some facts are missing from the direct variant.
struct FixtureOptions {
  std::size_t events = 500;
  std::uint64_t seed = 20;
};

std::vector<Triple> fixture_triples(const FixtureOptions& options, GraphModel model);
std::string fixture_ntriples(const FixtureOptions& options, GraphModel model);
/// Built with the eventkg (reified) or dbpedia (direct) schema preset.
KnowledgeGraph fixture_graph(const FixtureOptions& options, GraphModel model);
/// The reified variant's owl:sameAs triples.
std::string fixture_same_as(const FixtureOptions& options);

}  // namespace eventqa
