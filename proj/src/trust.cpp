#include "olam/trust.hpp"

#include <map>
#include <set>

#include "olam/constructor.hpp"
#include "olam/context.hpp"
#include "olam/overloaded.hpp"

namespace olam {

using Json = nlohmann::ordered_json;

TrustSpec make_trust_spec(const Program& program, const TargetDistributionFile& file, const Rational& epsilon,
                          std::optional<std::size_t> frequency_width) {
  if (epsilon <= Rational(0) || epsilon > Rational(1))
    throw Error(ErrorCode::Usage, "epsilon must satisfy 0 < epsilon <= 1, got " + epsilon.str());
  TrustSpec spec{{}, epsilon, frequency_width};
  NameSet globals = program.globals().term_names();
  for (auto& e : file.entries) {
    Term y = program.resolve(e.outcome);
    auto unknown = [&](const std::string& why) {
      return Error(ErrorCode::UnknownOutcome, "target outcome '" + print_term(e.outcome) + "' " + why, e.pos);
    };
    for (auto& x : free_term_vars(y))
      if (!globals.contains(x)) throw unknown("mentions unknown name '" + x + "'");
    TypeCon ty;
    try {
      ty = program.type_of(y);
    } catch (const Error& err) {
      throw unknown(std::string("is ill-typed: ") + err.what());
    }
    if (!con_equiv(ty, program.main_type()))
      throw unknown("has type " + print_type(ty) + ", not " + print_type(program.main_type()));
    if (program.reducer().deterministic_strategy(y)) throw unknown("is not a normal form");
    for (auto& t : spec.targets)
      if (alpha_eq(t.outcome, y))
        throw Error(ErrorCode::DuplicateOutcome, "outcome '" + print_term(y) + "' listed twice", e.pos);
    spec.targets.push_back(TrustTarget{y, e.prob});
  }
  return spec;
}

namespace {

Enumeration outcomes_of(const Program& program, const TrustSpec& spec) {
  if (spec.frequency_width) {
    if (auto shape = oracle_redex_shape(program.main()))
      return program.engine().oracle_frequency(shape->oracle, shape->arg, *spec.frequency_width);
  }
  return program.engine().enumerate_distribution(program.main(), spec.fuel);
}

struct Tally {
  std::vector<TrustRow> rows;
  Rational total;
  Rational untargeted;
};

/// Rows in distribution order followed by targets the program never reaches.
Tally tally(const std::vector<std::pair<Term, Rational>>& dist, const TrustSpec& spec) {
  Tally out{{}, 0, 0};
  std::vector<bool> used(spec.targets.size(), false);
  auto row = [&](Term y, std::optional<Rational> f, std::optional<Rational> z) {
    TrustRow r;
    r.outcome = std::move(y);
    r.target = f;
    r.derived = z;
    r.difference = f.value_or(0) - z.value_or(0);
    r.constrained = f && !f->is_zero();
    r.pass = !r.constrained || (z && abs(r.difference) < spec.epsilon);
    out.rows.push_back(std::move(r));
  };
  for (auto& [y, z] : dist) {
    out.total += z;
    std::optional<Rational> f;
    for (std::size_t i = 0; i < spec.targets.size(); ++i)
      if (!used[i] && alpha_eq(spec.targets[i].outcome, y)) {
        used[i] = true;
        f = spec.targets[i].prob;
        break;
      }
    if (!f || f->is_zero()) out.untargeted += z;
    row(y, f, z);
  }
  for (std::size_t i = 0; i < spec.targets.size(); ++i)
    if (!used[i]) row(spec.targets[i].outcome, spec.targets[i].prob, std::nullopt);
  return out;
}

}  // namespace

TrustReport trust_check(const Program& program, const TrustSpec& spec) {
  TrustReport r;
  r.epsilon = spec.epsilon;
  r.enumeration = outcomes_of(program, spec);
  std::vector<std::pair<Term, Rational>> dist;
  for (auto& e : r.enumeration.distribution) dist.emplace_back(e.outcome, e.prob);
  Tally t = tally(dist, spec);
  r.rows = std::move(t.rows);
  r.total = t.total;
  r.total_ok = r.total == Rational(1);
  r.untargeted_mass = t.untargeted;
  r.untargeted_ok = r.untargeted_mass < spec.epsilon;
  r.trusted = r.total_ok && r.untargeted_ok;
  for (auto& row : r.rows) r.trusted = r.trusted && row.pass;
  return r;
}

// --- certificates ----------------------------------------------------------------

namespace {

std::string witness_id(std::size_t i) { return "w" + std::to_string(i + 1); }

Json quad_json(const TraceQuadruple& q) {
  return Json{{"before", print_term(q.before)},
              {"after", print_term(q.after)},
              {"q", q.q.str()},
              {"label", std::string(label_name(q.label))}};
}

Json trace_json(const StaticTrace& t) {
  Json steps = Json::array();
  for (auto& q : t.steps) steps.push_back(quad_json(q));
  return steps;
}

Json opt_rational(const std::optional<Rational>& r) { return r ? Json(r->str()) : Json(nullptr); }

// Strict readers: each throws CertificateInvalid on a missing or mistyped field.

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::CertificateInvalid, what); }

const Json& field(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) invalid(std::string("missing field '") + key + "'");
  return obj.at(key);
}

void exact_keys(const Json& obj, std::initializer_list<const char*> keys, const std::string& where) {
  if (!obj.is_object()) invalid(where + " is not an object");
  if (obj.size() != keys.size()) invalid(where + " has unexpected fields");
  for (auto* k : keys)
    if (!obj.contains(k)) invalid(where + " lacks field '" + k + "'");
}

std::string str_field(const Json& obj, const char* key) {
  const Json& v = field(obj, key);
  if (!v.is_string()) invalid(std::string("field '") + key + "' is not a string");
  return v.get<std::string>();
}

bool bool_field(const Json& obj, const char* key) {
  const Json& v = field(obj, key);
  if (!v.is_boolean()) invalid(std::string("field '") + key + "' is not a boolean");
  return v.get<bool>();
}

const Json& array_field(const Json& obj, const char* key) {
  const Json& v = field(obj, key);
  if (!v.is_array()) invalid(std::string("field '") + key + "' is not an array");
  return v;
}

Rational rational_field(const Json& obj, const char* key) {
  std::string s = str_field(obj, key);
  Rational r;
  try {
    r = Rational::parse(s);
  } catch (const Error&) {
    invalid(std::string("field '") + key + "' is not a rational");
  }
  if (r.str() != s) invalid(std::string("field '") + key + "' is not in canonical p/q form");
  return r;
}

std::optional<Rational> opt_rational_field(const Json& obj, const char* key) {
  if (field(obj, key).is_null()) return std::nullopt;
  return rational_field(obj, key);
}

Term term_field(const Program& program, const Json& obj, const char* key) {
  std::string s = str_field(obj, key);
  Term t;
  try {
    t = parse_term(s);
  } catch (const Error& e) {
    invalid(std::string("field '") + key + "' does not parse: " + e.what());
  }
  if (print_term(t) != s) invalid(std::string("field '") + key + "' is not in printed form");
  for (auto& x : free_term_vars(t))
    if (!program.globals().term_type(x)) invalid(std::string("field '") + key + "' mentions unknown '" + x + "'");
  return t;
}

StaticTrace trace_from(const Program& program, const Json& steps, const Term& start) {
  if (!steps.is_array()) invalid("a branch is not an array");
  StaticTrace t{start, {}};
  for (auto& s : steps) {
    exact_keys(s, {"before", "after", "q", "label"}, "a trace step");
    auto label = parse_label(str_field(s, "label"));
    if (!label) invalid("unknown step label '" + str_field(s, "label") + "'");
    t.steps.push_back(
        TraceQuadruple{term_field(program, s, "before"), term_field(program, s, "after"), rational_field(s, "q"), *label});
  }
  return t;
}

}  // namespace

Json build_certificate(const Program& program, const TrustReport& report) {
  const Enumeration& en = report.enumeration;
  if (en.total() != Rational(1))
    throw Error(ErrorCode::IncompleteWitnesses, "the distribution sums to " + en.total().str() + ", not 1");

  Json witnesses = Json::array();
  for (std::size_t i = 0; i < en.judgments.size(); ++i) {
    const MapstoJudgment& j = en.judgments[i];
    Json w{{"id", witness_id(i)}};
    Json branches = Json::array();
    std::visit(overloaded{
                   [&](const StaticTrace& t) {
                     w["kind"] = "merge";
                     branches.push_back(trace_json(t));
                   },
                   [&](const MergeWitness& m) {
                     w["kind"] = "merge";
                     for (auto& b : m.branches) branches.push_back(trace_json(b));
                   },
                   [&](const FrequencyWitness& f) {
                     w["kind"] = "frequency";
                     w["width"] = f.width;
                     branches.push_back(trace_json(f.tuple_trace));
                   },
               },
               j.witness);
    w["source"] = print_term(j.claim.source);
    w["target"] = print_term(j.claim.target);
    w["probability"] = j.claim.prob.str();
    w["branches"] = std::move(branches);
    witnesses.push_back(std::move(w));
  }

  Json dist = Json::array();
  for (auto& e : en.distribution) {
    if (e.witnesses.empty())
      throw Error(ErrorCode::IncompleteWitnesses, "outcome '" + print_term(e.outcome) + "' has no witness");
    Json ids = Json::array();
    for (auto i : e.witnesses) ids.push_back(witness_id(i));
    dist.push_back(Json{{"term", print_term(e.outcome)}, {"probability", e.prob.str()}, {"witnesses", ids}});
  }

  Json rows = Json::array();
  for (auto& r : report.rows)
    rows.push_back(Json{{"outcome", print_term(r.outcome)},
                        {"target", opt_rational(r.target)},
                        {"derived", opt_rational(r.derived)},
                        {"difference", r.difference.str()},
                        {"threshold", report.epsilon.str()},
                        {"constrained", r.constrained},
                        {"pass", r.pass}});

  return Json{{"schema", 1},
              {"program", program.name()},
              {"main", print_term(program.main())},
              {"seedless", true},
              {"distribution", std::move(dist)},
              {"witnesses", std::move(witnesses)},
              {"totality", en.total().str()},
              {"epsilon", report.epsilon.str()},
              {"rows", std::move(rows)},
              {"untargeted_mass", report.untargeted_mass.str()},
              {"verdict", report.trusted ? "trusted" : "untrusted"}};
}

void replay_certificate(const Program& program, const TrustSpec& spec, const Json& cert) {
  exact_keys(cert,
             {"schema", "program", "main", "seedless", "distribution", "witnesses", "totality", "epsilon", "rows",
              "untargeted_mass", "verdict"},
             "certificate");
  if (field(cert, "schema") != Json(1)) invalid("unsupported schema");
  if (str_field(cert, "program") != program.name()) invalid("certificate is for another program");
  if (!alpha_eq(term_field(program, cert, "main"), program.main())) invalid("certificate is for another main term");
  if (!bool_field(cert, "seedless")) invalid("certificate must be seedless");
  Rational epsilon = rational_field(cert, "epsilon");
  if (epsilon != spec.epsilon) invalid("epsilon differs from the trust specification");

  // Witnesses: each one is re-derived from scratch.
  std::map<std::string, std::pair<MapstoClaim, bool>> claims;
  const Json& ws = array_field(cert, "witnesses");
  for (std::size_t i = 0; i < ws.size(); ++i) {
    const Json& w = ws[i];
    std::string kind = str_field(w, "kind");
    if (kind == "frequency")
      exact_keys(w, {"id", "kind", "width", "source", "target", "probability", "branches"}, "a witness");
    else if (kind == "merge")
      exact_keys(w, {"id", "kind", "source", "target", "probability", "branches"}, "a witness");
    else
      invalid("unknown witness kind '" + kind + "'");
    std::string id = str_field(w, "id");
    if (id != witness_id(i)) invalid("witness ids must be w1, w2, ... in order");
    MapstoClaim claim{term_field(program, w, "source"), term_field(program, w, "target"),
                      rational_field(w, "probability")};
    if (!alpha_eq(claim.source, program.main())) invalid("witness " + id + " does not start at main");
    const Json& branches = array_field(w, "branches");
    if (branches.empty()) invalid("witness " + id + " has no branches");
    Witness witness;
    if (kind == "frequency") {
      const Json& width = field(w, "width");
      if (!width.is_number_unsigned() || branches.size() != 1) invalid("malformed frequency witness " + id);
      std::size_t n = width.get<std::size_t>();
      if (!spec.frequency_width || n != *spec.frequency_width) invalid("frequency width differs from the request");
      witness = FrequencyWitness{n, trace_from(program, branches[0], tuple(std::vector<Term>(n, claim.source)))};
    } else {
      MergeWitness m;
      for (auto& b : branches) m.branches.push_back(trace_from(program, b, claim.source));
      witness = std::move(m);
    }
    program.engine().check_trace(witness, claim);
    claims.emplace(id, std::make_pair(claim, false));
  }

  // Distribution: sums of referenced witnesses, canonical order, totality.
  std::vector<std::pair<Term, Rational>> dist;
  std::string previous;
  Rational total = 0;
  for (auto& e : array_field(cert, "distribution")) {
    exact_keys(e, {"term", "probability", "witnesses"}, "a distribution entry");
    Term y = term_field(program, e, "term");
    Rational p = rational_field(e, "probability");
    std::string key = canonical_form(y);
    if (!dist.empty() && key <= previous) invalid("distribution entries are not in canonical order");
    previous = key;
    Rational sum = 0;
    const Json& ids = array_field(e, "witnesses");
    if (ids.empty()) invalid("outcome '" + print_term(y) + "' has no witness");
    for (auto& idj : ids) {
      if (!idj.is_string()) invalid("witness reference is not a string");
      auto it = claims.find(idj.get<std::string>());
      if (it == claims.end()) invalid("unknown witness '" + idj.get<std::string>() + "'");
      if (it->second.second) invalid("witness '" + it->first + "' is referenced twice");
      it->second.second = true;
      if (!alpha_eq(it->second.first.target, y)) invalid("witness '" + it->first + "' proves another outcome");
      sum += it->second.first.prob;
    }
    if (sum != p) invalid("probability of '" + print_term(y) + "' is not the sum of its witnesses");
    total += p;
    dist.emplace_back(y, p);
  }
  for (auto& [id, c] : claims)
    if (!c.second) invalid("witness '" + id + "' is not referenced");
  if (rational_field(cert, "totality") != total) invalid("totality is not the sum of the distribution");
  if (total != Rational(1)) throw Error(ErrorCode::IncompleteWitnesses, "distribution sums to " + total.str());

  // The certified distribution must be the program's.
  Enumeration fresh = outcomes_of(program, spec);
  if (fresh.distribution.size() != dist.size()) invalid("distribution does not match the program");
  for (std::size_t i = 0; i < dist.size(); ++i)
    if (!alpha_eq(fresh.distribution[i].outcome, dist[i].first) || fresh.distribution[i].prob != dist[i].second)
      invalid("distribution does not match the program");

  // Threshold comparisons, recomputed row by row.
  Tally t = tally(dist, spec);
  const Json& rows = array_field(cert, "rows");
  if (rows.size() != t.rows.size()) invalid("row count differs");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Json& r = rows[i];
    const TrustRow& want = t.rows[i];
    exact_keys(r, {"outcome", "target", "derived", "difference", "threshold", "constrained", "pass"}, "a row");
    std::string where = "row " + std::to_string(i + 1);
    if (str_field(r, "outcome") != print_term(want.outcome)) invalid(where + ": outcome differs");
    if (opt_rational_field(r, "target") != want.target) invalid(where + ": target differs");
    if (opt_rational_field(r, "derived") != want.derived) invalid(where + ": derived probability differs");
    if (rational_field(r, "difference") != want.difference) invalid(where + ": difference differs");
    if (rational_field(r, "threshold") != epsilon) invalid(where + ": threshold differs");
    if (bool_field(r, "constrained") != want.constrained) invalid(where + ": constraint flag differs");
    if (bool_field(r, "pass") != want.pass) invalid(where + ": pass flag differs");
  }
  if (rational_field(cert, "untargeted_mass") != t.untargeted) invalid("untargeted mass differs");
  bool trusted = total == Rational(1) && t.untargeted < epsilon;
  for (auto& r : t.rows) trusted = trusted && r.pass;
  std::string verdict = str_field(cert, "verdict");
  if (verdict != (trusted ? "trusted" : "untrusted")) invalid("verdict differs");
}

}  // namespace olam
