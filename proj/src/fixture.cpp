#include "eventqa/fixture.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "eventqa/ntriples.hpp"
#include "eventqa/rng.hpp"
#include "eventqa/schema.hpp"
#include "eventqa/vocabulary.hpp"

namespace eventqa {
namespace {

enum class EntityKind { country, city, team, person, organisation };

struct Entity {
  EntityKind kind;
  std::string name;  // label
  std::string local;  // dbr local name
  std::int32_t birth_day = 0;  // persons only
  std::size_t link = 0;        // country of a city/team, city of a person
};

struct Fact {
  std::string predicate;
  bool to_event = false;
  std::size_t target = 0;
  bool valid = false;  // statement carries the event's time span
};

struct Event {
  std::string label;
  std::string local;
  std::int32_t begin_day = 0;
  std::int32_t end_day = 0;
  int year = 0;
  std::string year_predicate_begin;  // direct variant
  std::string year_predicate_end;
  std::string figure_predicate;  // non-temporal integer fact
  std::int64_t figure = 0;
  std::vector<Fact> facts;
};

struct World {
  std::vector<Entity> entities;
  std::vector<Event> events;
};

constexpr std::array syllables = {"ar", "ven", "ka", "lor", "mi", "sto", "ra", "bel", "qui", "to", "ne", "dor",
                                  "sa", "li", "um", "ve", "ta", "ro", "go", "bar", "tel", "sen", "da", "po"};

std::int32_t day_number(int y, unsigned m, unsigned d) {
  return std::chrono::sys_days{std::chrono::year{y} / std::chrono::month{m} / std::chrono::day{d}}
      .time_since_epoch()
      .count();
}

std::string iso_date(std::int32_t day) { return date_literal(day).lexical; }

class Builder {
 public:
  explicit Builder(const FixtureOptions& o) : rng_(o.seed, 0), n_(std::max<std::size_t>(o.events, 4)) {}

  World run() {
    const std::size_t countries = std::max<std::size_t>(6, n_ / 12);
    const std::size_t cities = std::max<std::size_t>(8, n_ / 4);
    const std::size_t teams = std::max<std::size_t>(8, n_ / 3);
    const std::size_t persons = std::max<std::size_t>(12, n_ * 4 / 5);
    const std::size_t orgs = std::max<std::size_t>(4, n_ / 8);
    for (std::size_t i = 0; i < countries; ++i) add(EntityKind::country, name(2, 3) + "ia", "");
    for (std::size_t i = 0; i < cities; ++i) add(EntityKind::city, name(2, 3), "", pick(0, countries));
    for (std::size_t i = 0; i < teams; ++i) {
      add(EntityKind::team, name(2, 2) + (i % 2 == 0 ? " FC" : " Racing"), "", pick(0, countries));
    }
    for (std::size_t i = 0; i < persons; ++i) {
      auto first = name(2, 2);
      if (i % 17 == 4) first += "ñ" + std::string(syllables[rng_.uniform_index(syllables.size())]);
      add(EntityKind::person, first + " " + name(2, 3), "", countries + pick(0, cities));
      w_.entities.back().birth_day = day_number(1900 + static_cast<int>(rng_.uniform_index(90)), 1 + rng_.uniform_index(12),
                                                1 + rng_.uniform_index(28));
    }
    for (std::size_t i = 0; i < orgs; ++i) add(EntityKind::organisation, name(2, 3) + " Foundation", "");

    const std::size_t city0 = countries;
    const std::size_t team0 = city0 + cities;
    const std::size_t person0 = team0 + teams;
    const std::size_t org0 = person0 + persons;
    auto country = [&] { return pick(0, countries); };
    auto city = [&] { return city0 + pick(0, cities); };
    auto team = [&] { return team0 + pick(0, teams); };
    auto person = [&] { return person0 + pick(0, persons); };
    auto org = [&] { return org0 + pick(0, orgs); };
    const auto dbo = [](const char* local) { return iri(ns::dbo, local); };

    std::array<std::vector<std::size_t>, 4> series;
    for (std::size_t e = 0; e < n_; ++e) {
      Event ev;
      const auto kind = rng_.uniform_index(4);
      ev.year = 1950 + static_cast<int>(rng_.uniform_index(70));
      const auto month = 1 + static_cast<unsigned>(rng_.uniform_index(12));
      const auto dom = 1 + static_cast<unsigned>(rng_.uniform_index(28));
      ev.begin_day = day_number(ev.year, month, dom);
      ev.end_day = ev.begin_day + static_cast<std::int32_t>(rng_.uniform_index(4));
      auto add_fact = [&](const std::string& p, std::size_t target, bool valid = false) {
        for (const auto& f : ev.facts) {
          if (f.predicate == p && f.target == target && !f.to_event) return;
        }
        ev.facts.push_back({p, false, target, valid});
      };
      switch (kind) {
        case 0: {
          const auto c = country();
          ev.label = std::to_string(ev.year) + " " + w_.entities[c].name + " Grand Prix";
          add_fact(dbo("country"), c);
          add_fact(dbo("location"), city());
          add_fact(dbo("fastestDriverTeam"), team());
          add_fact(dbo("secondTeam"), team());
          add_fact(dbo("firstDriver"), person());
          if (rng_.bernoulli(0.5)) add_fact(dbo("secondDriver"), person());
          ev.year_predicate_begin = dbo("date");
          ev.figure_predicate = iri(ns::dbp, "laps");
          ev.figure = 40 + static_cast<std::int64_t>(rng_.uniform_index(40));
          break;
        }
        case 1: {
          const auto c = country();
          ev.label = std::to_string(ev.year) + " " + w_.entities[c].name + " Football League";
          ev.begin_day = day_number(ev.year, 3, 1);
          ev.end_day = day_number(ev.year, 11, 30);
          add_fact(dbo("country"), c);
          add_fact(dbo("soccerLeagueWinner"), team(), true);
          add_fact(dbo("soccerLeagueRelegated"), team());
          add_fact(dbo("topScorer"), person());
          ev.year_predicate_begin = dbo("startDate");
          ev.year_predicate_end = dbo("endDate");
          ev.figure_predicate = iri(ns::dbp, "matches");
          ev.figure = 100 + static_cast<std::int64_t>(rng_.uniform_index(300));
          break;
        }
        case 2: {
          const auto place = city();
          ev.label = "Battle of " + w_.entities[place].name + " " + std::to_string(ev.year);
          ev.end_day = ev.begin_day + static_cast<std::int32_t>(rng_.uniform_index(30));
          add_fact(dbo("place"), place);
          add_fact(dbo("commander"), person(), true);
          add_fact(dbo("commander"), person(), true);
          add_fact(dbo("combatant"), country());
          add_fact(dbo("combatant"), country());
          ev.year_predicate_begin = dbo("date");
          ev.figure_predicate = iri(ns::dbp, "casualties");
          ev.figure = 100 + static_cast<std::int64_t>(rng_.uniform_index(20000));
          break;
        }
        default: {
          const auto place = city();
          ev.label = std::to_string(ev.year) + " " + w_.entities[place].name + " Music Festival";
          add_fact(dbo("country"), w_.entities[place].link);
          add_fact(dbo("location"), place);
          add_fact(dbo("organizer"), org());
          add_fact(dbo("performer"), person());
          if (rng_.bernoulli(0.6)) add_fact(dbo("performer"), person());
          ev.year_predicate_begin = dbo("startDate");
          ev.year_predicate_end = dbo("endDate");
          ev.figure_predicate = iri(ns::dbp, "attendance");
          ev.figure = 1000 + static_cast<std::int64_t>(rng_.uniform_index(90000));
          break;
        }
      }
      if (!series[kind].empty() && rng_.bernoulli(0.7)) {
        const auto& s = series[kind];
        ev.facts.push_back({dbo("previousEvent"), true, s[rng_.uniform_index(s.size())], false});
      }
      ev.local = unique_local(ev.label);
      series[kind].push_back(w_.events.size());
      w_.events.push_back(std::move(ev));
    }
    return std::move(w_);
  }

 private:
  std::size_t pick(std::size_t lo, std::size_t count) { return lo + rng_.uniform_index(count); }

  std::string name(std::size_t min, std::size_t max) {
    const auto n = min + rng_.uniform_index(max - min + 1);
    std::string out;
    for (std::size_t i = 0; i < n; ++i) out += syllables[rng_.uniform_index(syllables.size())];
    out[0] = static_cast<char>(out[0] - 'a' + 'A');
    return out;
  }

  std::string unique_local(const std::string& label) {
    std::string local = label;
    std::replace(local.begin(), local.end(), ' ', '_');
    auto candidate = local;
    for (int k = 2; !locals_.insert(candidate).second; ++k) candidate = local + "_" + std::to_string(k);
    return candidate;
  }

  void add(EntityKind kind, std::string label, std::string, std::size_t link = 0) {
    Entity e{kind, label, unique_local(label), 0, link};
    w_.entities.push_back(std::move(e));
  }

  RngStream rng_;
  std::size_t n_;
  World w_;
  std::set<std::string> locals_;
};

Term literal_term(std::string lexical, const std::string& datatype, std::string language = {}) {
  return Term::make_literal({std::move(lexical), datatype, std::move(language)});
}

// Deliberate gaps: nodes without a same-as link, and facts absent from the direct variant.
bool entity_unlinked(std::size_t i) { return i % 11 == 5; }
bool event_unlinked(std::size_t i) { return i % 23 == 7; }
bool fact_missing_in_direct(std::size_t event, std::size_t fact) { return (event * 7 + fact) % 19 == 3; }

}  // namespace

std::vector<Triple> fixture_triples(const FixtureOptions& options, GraphModel model) {
  const World w = Builder(options).run();
  std::vector<Triple> out;
  auto T = [&](Term s, const std::string& p, Term o) { out.push_back({std::move(s), Term::make_iri(p), std::move(o)}); };
  const auto dbr = [](const std::string& local) { return Term::make_iri(iri(ns::dbr, local)); };
  const auto date = [](std::int32_t day) { return literal_term(iso_date(day), vocab::xsd_date); };

  if (model == GraphModel::reified) {
    auto event_node = [&](std::size_t i) { return Term::make_iri(iri(ns::eventkg_resource, "event_" + std::to_string(i))); };
    auto entity_node = [&](std::size_t i) { return Term::make_iri(iri(ns::eventkg_resource, "entity_" + std::to_string(i))); };
    for (std::size_t i = 0; i < w.entities.size(); ++i) {
      const auto& e = w.entities[i];
      T(entity_node(i), vocab::rdfs_label, literal_term(e.name, "", "en"));
      if (!entity_unlinked(i)) T(entity_node(i), vocab::owl_same_as, dbr(e.local));
      if (e.kind == EntityKind::person) T(entity_node(i), vocab::sem_begin, date(e.birth_day));
    }
    std::size_t statement = 0;
    auto reify = [&](const Term& s, const std::string& p, const Term& o, const Event* valid) {
      const auto st = Term::make_iri(iri(ns::eventkg_resource, "relation_" + std::to_string(++statement)));
      T(st, vocab::rdf_type, Term::make_iri(iri(ns::eventkg_schema, "Relation")));
      T(st, vocab::rdf_subject, s);
      T(st, vocab::rdf_object, o);
      T(st, vocab::sem_role_type, Term::make_iri(p));
      if (valid != nullptr) {
        T(st, vocab::sem_begin, date(valid->begin_day));
        T(st, vocab::sem_end, date(valid->end_day));
      }
    };
    for (std::size_t i = 0; i < w.entities.size(); ++i) {
      const auto& e = w.entities[i];
      if (e.kind == EntityKind::city || e.kind == EntityKind::team) {
        reify(entity_node(i), iri(ns::dbo, "country"), entity_node(e.link), nullptr);
      } else if (e.kind == EntityKind::person) {
        reify(entity_node(i), iri(ns::dbo, "birthPlace"), entity_node(e.link), nullptr);
      }
    }
    for (std::size_t i = 0; i < w.events.size(); ++i) {
      const auto& ev = w.events[i];
      const auto node = event_node(i);
      T(node, vocab::rdf_type, Term::make_iri(vocab::sem_event));
      T(node, vocab::rdfs_label, literal_term(ev.label, "", "en"));
      if (!event_unlinked(i)) T(node, vocab::owl_same_as, dbr(ev.local));
      T(node, vocab::sem_begin, date(ev.begin_day));
      T(node, vocab::sem_end, date(ev.end_day));
      T(node, ev.figure_predicate, literal_term(std::to_string(ev.figure), vocab::xsd_integer));
      for (const auto& f : ev.facts) {
        reify(node, f.predicate, f.to_event ? event_node(f.target) : entity_node(f.target), f.valid ? &ev : nullptr);
      }
    }
    return out;
  }

  for (std::size_t i = 0; i < w.entities.size(); ++i) {
    const auto& e = w.entities[i];
    T(dbr(e.local), vocab::rdfs_label, literal_term(e.name, "", "en"));
    if (e.kind == EntityKind::city || e.kind == EntityKind::team) {
      T(dbr(e.local), iri(ns::dbo, "country"), dbr(w.entities[e.link].local));
    } else if (e.kind == EntityKind::person) {
      T(dbr(e.local), iri(ns::dbo, "birthPlace"), dbr(w.entities[e.link].local));
      T(dbr(e.local), iri(ns::dbo, "birthDate"), date(e.birth_day));
    }
  }
  for (std::size_t i = 0; i < w.events.size(); ++i) {
    const auto& ev = w.events[i];
    const auto node = dbr(ev.local);
    T(node, vocab::rdf_type, Term::make_iri(vocab::dbo_event));
    T(node, vocab::rdfs_label, literal_term(ev.label, "", "en"));
    T(node, iri(ns::dbp, "year"), literal_term(std::to_string(ev.year), vocab::xsd_integer));
    T(node, ev.year_predicate_begin, date(ev.begin_day));
    if (!ev.year_predicate_end.empty()) T(node, ev.year_predicate_end, date(ev.end_day));
    T(node, ev.figure_predicate, literal_term(std::to_string(ev.figure), vocab::xsd_integer));
    for (std::size_t k = 0; k < ev.facts.size(); ++k) {
      if (fact_missing_in_direct(i, k)) continue;
      const auto& f = ev.facts[k];
      T(node, f.predicate, dbr(f.to_event ? w.events[f.target].local : w.entities[f.target].local));
    }
  }
  return out;
}

std::string fixture_ntriples(const FixtureOptions& options, GraphModel model) {
  std::string out;
  for (const auto& t : fixture_triples(options, model)) out += to_ntriples(t) + "\n";
  return out;
}

KnowledgeGraph fixture_graph(const FixtureOptions& options, GraphModel model) {
  const auto triples = fixture_triples(options, model);
  return build_graph(triples, model == GraphModel::reified ? SchemaConfig::eventkg() : SchemaConfig::dbpedia());
}

std::string fixture_same_as(const FixtureOptions& options) {
  std::string out;
  for (const auto& t : fixture_triples(options, GraphModel::reified)) {
    if (t.predicate.value == vocab::owl_same_as) out += to_ntriples(t) + "\n";
  }
  return out;
}

}  // namespace eventqa
