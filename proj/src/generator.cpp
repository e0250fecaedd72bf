#include "eventqa/generator.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <thread>

#include "eventqa/text.hpp"
#include "eventqa/vocabulary.hpp"

namespace eventqa {

void GeneratorConfig::validate() const {
  if (max_relations < 1) throw InvalidConfig("max_relations must be at least 1");
  if (max_attempts_per_query < 1) throw InvalidConfig("max_attempts_per_query must be at least 1");
  bool any_positive = false;
  for (double w : type_weights) {
    if (!(w >= 0.0)) throw InvalidConfig("query type weights must be non-negative");
    any_positive = any_positive || w > 0.0;
  }
  if (!any_positive) throw InvalidConfig("query type weights must not all be zero");
  if (!(temporal_constraint_probability >= 0.0 && temporal_constraint_probability <= 1.0)) {
    throw InvalidConfig("temporal constraint probability must lie in [0, 1]");
  }
}

namespace {

// A vertex of the sub-graph: a node or an interned literal.
struct VertexKey {
  bool literal = false;
  std::uint32_t index = 0;
  auto operator<=>(const VertexKey&) const = default;
};

VertexKey subject_vertex(const Relation& r) { return {false, r.subject}; }
VertexKey object_vertex(const Relation& r) { return {r.object.is_literal, r.object.index}; }

std::string filter_variable_name(std::string_view predicate, std::string_view taken) {
  std::string local(local_name(predicate));
  if (local.size() > 3 + 9 && local.starts_with("has") && local.ends_with("TimeStamp")) {
    local = local.substr(3, local.size() - 12);
    local[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(local[0])));
  }
  std::string name;
  for (char c : local) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') name += c;
  }
  if (name.empty()) name = "time";
  static const std::regex reserved("(relation|entity)[0-9]+");
  if (name == taken || name == "count" || std::regex_match(name, reserved)) name += "_t";
  return name;
}

}  // namespace

Generator::Generator(const KnowledgeGraph& kg, GeneratorConfig config)
    : kg_(kg), config_(std::move(config)) {
  config_.validate();
  walkable_.resize(kg_.node_count());
  for (NodeIndex n = 0; n < kg_.node_count(); ++n) {
    for (auto r : kg_.incident(n)) {
      if (kg_.is_walkable(kg_.relation(r))) walkable_[n].push_back(r);
    }
  }
}

QueryType Generator::select_query_type(RngStream& rng) const {
  static constexpr QueryType types[] = {QueryType::ask, QueryType::select, QueryType::count};
  return types[rng.weighted(config_.type_weights)];
}

NodeIndex Generator::sample_event(RngStream& rng) const {
  const auto events = kg_.events();
  if (events.empty()) throw EmptyEventSet();
  return events[rng.uniform_index(events.size())];
}

RelationIndex Generator::select_seed_relation(NodeIndex event, RngStream& rng) const {
  std::vector<RelationIndex> eligible;
  for (auto r : walkable_[event]) {
    const auto& rel = kg_.relation(r);
    if (rel.object.is_literal) continue;
    if (walkable_[rel.subject].size() >= 2 || walkable_[rel.object.index].size() >= 2) {
      eligible.push_back(r);
    }
  }
  if (eligible.empty()) throw NoEligibleSeed(kg_.iri(event));
  return eligible[rng.uniform_index(eligible.size())];
}

SubGraph Generator::random_walk_extend(RelationIndex seed, RngStream& rng,
                                       std::size_t max_relations) const {
  SubGraph sub{{seed}};
  std::vector<NodeIndex> nodes;
  auto add_nodes = [&](const Relation& r) {
    for (auto v : {subject_vertex(r), object_vertex(r)}) {
      if (!v.literal && std::find(nodes.begin(), nodes.end(), v.index) == nodes.end()) {
        nodes.push_back(v.index);
      }
    }
  };
  add_nodes(kg_.relation(seed));
  std::size_t attempts = 0;
  while (sub.relations.size() < max_relations) {
    if (attempts++ >= config_.max_attempts_per_query) throw WalkStuck();
    const auto node = nodes[rng.uniform_index(nodes.size())];
    const auto& candidates = walkable_[node];
    if (candidates.empty()) continue;
    const auto r = candidates[rng.uniform_index(candidates.size())];
    if (std::find(sub.relations.begin(), sub.relations.end(), r) != sub.relations.end()) continue;
    sub.relations.push_back(r);
    add_nodes(kg_.relation(r));
  }
  return sub;
}

QueryTerm Generator::term_for_node(NodeIndex n) const {
  const auto& node = kg_.node(n);
  if (config_.model == GraphModel::reified && !node.same_as.empty()) {
    return QueryTerm::node(node.same_as.front(), true);
  }
  return QueryTerm::node(node.iri);
}

QueryGraph Generator::allocate_variable(const SubGraph& sub, QueryType type, RngStream& rng) const {
  std::map<VertexKey, std::size_t> degree;
  std::map<VertexKey, std::set<NodeIndex>> neighbours;
  for (auto r : sub.relations) {
    const auto& rel = kg_.relation(r);
    const auto s = subject_vertex(rel);
    const auto o = object_vertex(rel);
    ++degree[s];
    ++degree[o];
    if (o.literal) neighbours[o].insert(rel.subject);
  }

  std::optional<VertexKey> chosen;
  if (type != QueryType::ask) {
    std::vector<VertexKey> eligible;
    for (const auto& [v, d] : degree) {
      if (d < 2) continue;  // leaf
      if (v.literal) {
        const auto& lit = kg_.literal(v.index);
        if (type == QueryType::count && parse_temporal(lit)) continue;
        const auto needle = to_lower_utf8(lit.lexical);
        bool redundant = false;
        for (auto n : neighbours[v]) {
          for (const auto& [lang, text] : kg_.node(n).labels) {
            if (to_lower_utf8(text).find(needle) != std::string::npos) redundant = true;
          }
        }
        if (redundant) continue;
      }
      eligible.push_back(v);
    }
    if (eligible.empty()) throw NoEligibleVariable();
    chosen = eligible[rng.uniform_index(eligible.size())];
  }

  QueryGraph graph;
  if (chosen) {
    Variable var;
    if (chosen->literal) {
      var.name = "value";
      var.role = VariableRole::literal;
      var.bound_to = kg_.literal(chosen->index).lexical;
    } else {
      const auto& node = kg_.node(chosen->index);
      var.name = node.kind == NodeKind::event ? "event" : "entity";
      var.role = VariableRole::node;
      var.bound_to = node.iri;
      if (config_.model == GraphModel::direct && node.kind == NodeKind::event) {
        for (const auto& [predicate, value] : kg_.schema().event_types) {
          if (predicate == vocab::rdf_type &&
              std::binary_search(node.types.begin(), node.types.end(), value)) {
            var.type = value;
            break;
          }
        }
      }
    }
    graph.variables.push_back(std::move(var));
  }
  auto term_for = [&](VertexKey v) {
    if (chosen && v == *chosen) return QueryTerm::variable(graph.variables.front().name);
    if (v.literal) return QueryTerm::literal(kg_.literal(v.index));
    return term_for_node(v.index);
  };
  for (auto r : sub.relations) {
    const auto& rel = kg_.relation(r);
    QueryRelation qr;
    qr.subject = term_for(subject_vertex(rel));
    qr.predicate = rel.predicate;
    qr.object = term_for(object_vertex(rel));
    qr.provenance = config_.model == GraphModel::reified ? rel.provenance : Provenance::direct;
    qr.source_id = rel.id;
    graph.relations.push_back(std::move(qr));
  }
  return graph;
}

SemanticQuery Generator::add_temporal_constraint(QueryGraph graph, QueryType type,
                                                 const SubGraph& sub, RngStream& rng,
                                                 double p) const {
  struct Anchor {
    std::optional<std::size_t> relation;
    NodeIndex node = 0;
    std::string predicate;
    Literal value;
    std::string description;
  };
  std::vector<Anchor> anchors;
  const auto& schema = kg_.schema();
  if (config_.model == GraphModel::reified) {
    for (std::size_t i = 0; i < sub.relations.size(); ++i) {
      const auto& rel = kg_.relation(sub.relations[i]);
      if (rel.provenance != Provenance::reified) continue;
      if (rel.valid_from && parse_temporal(*rel.valid_from) && !schema.time_begin.empty()) {
        anchors.push_back({i, 0, schema.time_begin.front(), *rel.valid_from, rel.id + " begin"});
      }
      if (rel.valid_to && parse_temporal(*rel.valid_to) && !schema.time_end.empty()) {
        anchors.push_back({i, 0, schema.time_end.front(), *rel.valid_to, rel.id + " end"});
      }
    }
  }
  std::set<NodeIndex> nodes;
  for (auto r : sub.relations) {
    const auto& rel = kg_.relation(r);
    nodes.insert(rel.subject);
    if (!rel.object.is_literal) nodes.insert(rel.object.index);
  }
  for (auto n : nodes) {
    for (auto r : kg_.outgoing(n)) {
      const auto& rel = kg_.relation(r);
      if (!kg_.is_temporal_fact(rel)) continue;
      const auto& lit = kg_.literal(rel.object.index);
      if (parse_temporal(lit)) anchors.push_back({std::nullopt, n, rel.predicate, lit, rel.id});
    }
  }

  std::optional<TemporalConstraint> constraint;
  std::string anchor_description;
  if (rng.bernoulli(p) && !anchors.empty()) {
    const auto& anchor = anchors[rng.uniform_index(anchors.size())];
    static constexpr TemporalMode modes[] = {TemporalMode::within, TemporalMode::after,
                                             TemporalMode::before};
    const auto mode = modes[rng.uniform_index(3)];
    TemporalConstraint c;
    c.relation = anchor.relation;
    if (!anchor.relation) {
      const Variable* var = graph.variables.empty() ? nullptr : &graph.variables.front();
      if (var && var->role == VariableRole::node && var->bound_to == kg_.iri(anchor.node)) {
        c.term = QueryTerm::variable(var->name);
      } else {
        c.term = term_for_node(anchor.node);
      }
    }
    c.predicate = anchor.predicate;
    c.variable = filter_variable_name(anchor.predicate,
                                      graph.variables.empty() ? "" : graph.variables.front().name);
    c.mode = mode;
    const auto value = *parse_temporal(anchor.value);
    switch (mode) {
      case TemporalMode::within:
        c.lower = date_literal(value.first_day);
        c.upper = date_literal(value.last_day);
        break;
      case TemporalMode::after: c.lower = shift_temporal(anchor.value, -1); break;
      case TemporalMode::before: c.upper = shift_temporal(anchor.value, +1); break;
    }
    constraint = std::move(c);
    anchor_description = anchor.description + " " + std::string(to_string(mode));
  }
  SeedTrace trace;
  trace.anchor = anchor_description;
  return make_query(std::move(graph), type, std::move(constraint), config_.model, std::move(trace));
}

SemanticQuery Generator::generate_query(std::uint64_t stream_index) const {
  RngStream rng(config_.rng_seed, stream_index);
  std::string last_failure = "no attempt succeeded";
  for (std::uint32_t attempt = 1; attempt <= config_.max_attempts_per_query; ++attempt) {
    const auto type = select_query_type(rng);
    NodeIndex event = 0;
    try {
      event = sample_event(rng);
    } catch (const EmptyEventSet& e) {
      throw GenerationExhausted(std::string("generation exhausted: ") + e.what());
    }
    try {
      const auto seed = select_seed_relation(event, rng);
      const auto sub = random_walk_extend(seed, rng, config_.max_relations);
      auto graph = allocate_variable(sub, type, rng);
      const std::string variable =
          graph.variables.empty() ? std::string() : graph.variables.front().bound_to;
      auto q = add_temporal_constraint(std::move(graph), type, sub, rng,
                                       config_.temporal_constraint_probability);
      q.trace.seed = config_.rng_seed;
      q.trace.stream = stream_index;
      q.trace.attempts = attempt;
      q.trace.event = kg_.iri(event);
      q.trace.seed_relation = kg_.relation(seed).id;
      for (std::size_t i = 1; i < sub.relations.size(); ++i) {
        q.trace.walk.push_back(kg_.relation(sub.relations[i]).id);
      }
      q.trace.variable = variable;
      return q;
    } catch (const NoEligibleSeed& e) {
      last_failure = e.what();
    } catch (const WalkStuck& e) {
      last_failure = e.what();
    } catch (const NoEligibleVariable& e) {
      last_failure = e.what();
    }
  }
  throw GenerationExhausted("generation exhausted after " +
                            std::to_string(config_.max_attempts_per_query) +
                            " attempts on stream " + std::to_string(stream_index) + ": " +
                            last_failure);
}

std::vector<SemanticQuery> Generator::generate_dataset(std::size_t n, unsigned jobs) const {
  if (n < 1) throw InvalidConfig("dataset size must be at least 1");
  struct Slot {
    std::optional<SemanticQuery> query;
    std::string failure;
  };
  auto attempt = [&](std::uint64_t stream) {
    Slot slot;
    try {
      slot.query = generate_query(stream);
    } catch (const GenerationExhausted& e) {
      slot.failure = e.what();
    }
    return slot;
  };

  std::vector<Slot> first(n);
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) first[i] = attempt(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    for (unsigned j = 0; j < jobs; ++j) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) first[i] = attempt(i);
      });
    }
  }

  std::vector<SemanticQuery> out;
  out.reserve(n);
  std::set<std::set<std::string>> seen;
  std::uint64_t next_stream = n;
  const std::uint64_t budget = static_cast<std::uint64_t>(n) * config_.max_attempts_per_query;
  std::string last_failure;
  for (std::size_t i = 0; i < n; ++i) {
    Slot slot = std::move(first[i]);
    while (true) {
      if (slot.query && seen.insert(element_set(*slot.query)).second) {
        out.push_back(std::move(*slot.query));
        break;
      }
      last_failure = slot.query ? "duplicate query" : slot.failure;
      if (next_stream - n >= budget) {
        throw GenerationExhausted("cannot generate " + std::to_string(n) +
                                  " distinct queries (got " + std::to_string(out.size()) +
                                  "): " + last_failure);
      }
      slot = attempt(next_stream++);
    }
  }
  return out;
}

SemanticQuery generate_query(const KnowledgeGraph& kg, const GeneratorConfig& config,
                             std::uint64_t stream_index) {
  return Generator(kg, config).generate_query(stream_index);
}

std::vector<SemanticQuery> generate_dataset(const KnowledgeGraph& kg, std::size_t n,
                                            const GeneratorConfig& config, unsigned jobs) {
  return Generator(kg, config).generate_dataset(n, jobs);
}

}  // namespace eventqa
