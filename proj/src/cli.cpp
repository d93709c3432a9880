#include "olam/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "olam/constructor.hpp"
#include "olam/context.hpp"
#include "olam/overloaded.hpp"
#include "olam/program.hpp"
#include "olam/trust.hpp"

namespace olam {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Common {
  std::string program;
  std::vector<std::string> oracles;
  std::string format = "text";
  std::size_t fuel = kDefaultFuel;

  bool json() const { return format == "json"; }
  Program load() const {
    std::vector<fs::path> extra(oracles.begin(), oracles.end());
    return Program::load(program, extra);
  }
};

std::size_t display_width(const std::string& s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], display_width(r[i]));
    }
  for (auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(width[i] - display_width(r[i]) + 2, ' ');
    }
    out << line << '\n';
  }
}

Json header(const char* command) { return Json{{"schema", 1}, {"command", command}}; }

Rational rational_arg(const std::string& flag, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const Error&) {
    throw Error(ErrorCode::Usage, flag + " expects a rational p/q, got '" + text + "'");
  }
}

std::string join_ids(const std::vector<std::size_t>& ids) {
  std::string s;
  for (auto i : ids) s += (s.empty() ? "w" : ",w") + std::to_string(i + 1);
  return s;
}

Json trace_json(const StaticTrace& t) {
  Json steps = Json::array();
  for (auto& q : t.steps)
    steps.push_back(Json{{"before", print_term(q.before)},
                         {"after", print_term(q.after)},
                         {"q", q.q.str()},
                         {"label", std::string(label_name(q.label))}});
  return steps;
}

Json judgments_json(const Enumeration& en) {
  Json out = Json::array();
  for (std::size_t i = 0; i < en.judgments.size(); ++i) {
    auto& j = en.judgments[i];
    Json branches = Json::array();
    std::visit(overloaded{
                   [&](const StaticTrace& t) { branches.push_back(trace_json(t)); },
                   [&](const MergeWitness& m) {
                     for (auto& b : m.branches) branches.push_back(trace_json(b));
                   },
                   [&](const FrequencyWitness& f) { branches.push_back(trace_json(f.tuple_trace)); },
               },
               j.witness);
    out.push_back(Json{{"id", "w" + std::to_string(i + 1)},
                       {"source", print_term(j.claim.source)},
                       {"target", print_term(j.claim.target)},
                       {"probability", j.claim.prob.str()},
                       {"branches", std::move(branches)}});
  }
  return out;
}

Json distribution_json(const Enumeration& en) {
  Json out = Json::array();
  for (auto& e : en.distribution) {
    Json ids = Json::array();
    for (auto i : e.witnesses) ids.push_back("w" + std::to_string(i + 1));
    out.push_back(Json{{"term", print_term(e.outcome)}, {"probability", e.prob.str()}, {"witnesses", ids}});
  }
  return out;
}

void print_distribution(std::ostream& out, const Enumeration& en) {
  std::vector<std::vector<std::string>> rows;
  for (auto& e : en.distribution) rows.push_back({print_term(e.outcome), e.prob.str(), join_ids(e.witnesses)});
  print_table(out, rows);
}

// --- commands -------------------------------------------------------------------

int cmd_check(const Common& c, std::ostream& out) {
  Program p = c.load();
  if (c.json()) {
    Json j = header("check");
    Json defs = Json::array();
    for (auto& d : p.definition_types()) defs.push_back(Json{{"name", d.name}, {"type", print_type(d.type)}});
    j["definitions"] = std::move(defs);
    out << j.dump(2) << '\n';
  } else {
    for (auto& d : p.definition_types()) out << d.name << " : " << print_type(d.type) << '\n';
  }
  return kExitOk;
}

int cmd_eval(const Common& c, std::uint64_t seed, std::size_t samples, std::ostream& out) {
  Program p = c.load();
  std::map<std::string, std::pair<Term, std::size_t>> counts;
  std::vector<Reducer::Sample> kept;
  for (std::size_t j = 0; j < samples; ++j) {
    auto s = p.reducer().run_sample(p.main(), sample_seed(seed, j), c.fuel);
    auto [it, fresh] = counts.try_emplace(canonical_form(s.normal_form), s.normal_form, 0);
    ++it->second.second;
    if (j == 0) kept.push_back(std::move(s));
  }
  const Reducer::Sample& first = kept.front();
  if (c.json()) {
    Json j = header("eval");
    j["seed"] = seed;
    j["samples"] = samples;
    Json first_json{{"term", print_term(first.normal_form)},
                    {"probability", first.prob.str()},
                    {"steps", first.trace.size()}};
    j["first"] = std::move(first_json);
    Json outcomes = Json::array();
    for (auto& [key, v] : counts) {
      Rational f(static_cast<std::int64_t>(v.second));
      f /= Rational(static_cast<std::int64_t>(samples));
      outcomes.push_back(Json{{"term", print_term(v.first)}, {"count", v.second}, {"frequency", f.str()}});
    }
    j["outcomes"] = std::move(outcomes);
    out << j.dump(2) << '\n';
  } else {
    out << "seed " << seed << ", " << samples << (samples == 1 ? " sample" : " samples") << '\n';
    out << "first sample: " << print_term(first.normal_form) << " (path probability " << first.prob.str() << ", "
        << first.trace.size() << (first.trace.size() == 1 ? " step)\n" : " steps)\n");
    std::vector<std::vector<std::string>> rows{{"outcome", "count", "frequency"}};
    for (auto& [key, v] : counts) {
      std::ostringstream f;
      f.setf(std::ios::fixed);
      f.precision(4);
      f << static_cast<double>(v.second) / static_cast<double>(samples);
      rows.push_back({print_term(v.first), std::to_string(v.second), f.str()});
    }
    print_table(out, rows);
  }
  return kExitOk;
}

int cmd_dist(const Common& c, std::ostream& out) {
  Program p = c.load();
  Enumeration en = p.engine().enumerate_distribution(p.main(), c.fuel);
  if (c.json()) {
    Json j = header("dist");
    j["term"] = print_term(p.main());
    j["distribution"] = distribution_json(en);
    j["total"] = en.total().str();
    j["witnesses"] = judgments_json(en);
    out << j.dump(2) << '\n';
  } else {
    print_distribution(out, en);
  }
  return kExitOk;
}

int cmd_trace(const Common& c, std::ostream& out) {
  Program p = c.load();
  Enumeration en = p.engine().enumerate_distribution(p.main(), c.fuel);
  if (c.json()) {
    Json j = header("trace");
    Json paths = Json::array();
    for (auto& t : en.paths)
      paths.push_back(Json{{"start", print_term(t.start)},
                           {"end", print_term(t.last())},
                           {"probability", t.probability().str()},
                           {"steps", trace_json(t)}});
    j["paths"] = std::move(paths);
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  for (std::size_t i = 0; i < en.paths.size(); ++i) {
    const StaticTrace& t = en.paths[i];
    if (i) out << '\n';
    out << "path " << i + 1 << ": " << print_term(t.last()) << " with probability " << t.probability().str() << '\n';
    out << "  " << print_term(t.start) << '\n';
    for (auto& q : t.steps)
      out << "  ↦ [" << q.q.str() << ", " << label_symbol(q.label) << "] " << print_term(q.after) << '\n';
  }
  return kExitOk;
}

fs::path certificate_path(const std::string& program) {
  fs::path p(program);
  p.replace_extension(".cert.json");
  return p;
}

TrustSpec load_spec(const Program& p, const std::string& target, const std::string& epsilon,
                    std::optional<std::size_t> width, std::size_t fuel) {
  TargetDistributionFile file = parse_distribution(read_file(target));
  std::optional<Rational> eps = file.epsilon;
  if (!epsilon.empty()) eps = rational_arg("--epsilon", epsilon);
  if (!eps) throw Error(ErrorCode::Usage, "no threshold: pass --epsilon or put 'epsilon = p/q' in the target file");
  TrustSpec spec = make_trust_spec(p, file, *eps, width);
  spec.fuel = fuel;
  return spec;
}

int cmd_trust(const Common& c, const std::string& target, const std::string& epsilon,
              std::optional<std::size_t> width, std::ostream& out) {
  if (!epsilon.empty()) {
    Rational e = rational_arg("--epsilon", epsilon);
    if (e <= Rational(0) || e > Rational(1)) throw Error(ErrorCode::Usage, "--epsilon must satisfy 0 < epsilon <= 1");
  }
  Program p = c.load();
  TrustSpec spec = load_spec(p, target, epsilon, width, c.fuel);
  TrustReport r = trust_check(p, spec);
  Json cert = build_certificate(p, r);
  fs::path cert_path = certificate_path(c.program);
  {
    std::ofstream f(cert_path);
    if (!f) throw Error(ErrorCode::Io, "cannot write '" + cert_path.string() + "'");
    f << cert.dump(2) << '\n';
  }
  if (c.json()) {
    Json j = header("trust");
    j["verdict"] = r.trusted ? "trusted" : "untrusted";
    j["certificate"] = cert_path.string();
    j["report"] = cert;
    out << j.dump(2) << '\n';
  } else {
    auto opt = [](const std::optional<Rational>& x) { return x ? x->str() : std::string("-"); };
    std::vector<std::vector<std::string>> rows{{"outcome", "target", "derived", "|f-z|", "result"}};
    for (auto& row : r.rows)
      rows.push_back({print_term(row.outcome), opt(row.target), opt(row.derived), abs(row.difference).str(),
                      !row.constrained ? "unconstrained" : row.pass ? "pass" : "FAIL"});
    print_table(out, rows);
    out << "epsilon " << r.epsilon.str() << '\n';
    out << "totality " << r.total.str() << (r.total_ok ? " (ok)" : " (FAIL: must be 1/1)") << '\n';
    out << "untargeted mass " << r.untargeted_mass.str()
        << (r.untargeted_ok ? " (ok" : " (FAIL")
        << ": untargeted-mass policy (beyond the Trust axiom), must stay below epsilon)\n";
    out << "verdict: " << (r.trusted ? "trusted" : "untrusted") << '\n';
    out << "certificate: " << cert_path.string() << '\n';
  }
  return r.trusted ? kExitOk : kExitDomain;
}

int cmd_replay(const Common& c, const std::string& certificate, const std::string& target,
               const std::string& epsilon, std::optional<std::size_t> width, std::ostream& out) {
  Program p = c.load();
  TrustSpec spec = load_spec(p, target, epsilon, width, c.fuel);
  Json cert;
  try {
    cert = Json::parse(read_file(certificate));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::CertificateInvalid, std::string("certificate is not JSON: ") + e.what());
  }
  replay_certificate(p, spec, cert);
  if (c.json()) {
    Json j = header("replay");
    j["valid"] = true;
    j["verdict"] = cert["verdict"];
    out << j.dump(2) << '\n';
  } else {
    out << "certificate valid, verdict " << cert["verdict"].get<std::string>() << '\n';
  }
  return kExitOk;
}

int cmd_oracle_freq(const Common& c, const std::string& oracle, const std::string& arg, std::size_t n,
                    std::ostream& out) {
  Program p = c.load();
  std::optional<Term> a;
  if (!arg.empty()) {
    a = p.resolve(parse_term(arg));
    p.type_of(*a);
  }
  const OracleDef& def = p.oracles().get(oracle);
  if (a) p.checker().check_type(p.globals(), *a, def.argument_type());
  Enumeration en = p.engine().oracle_frequency(oracle, a, n);
  Term occ = oracle_occurrence(oracle, a);
  if (c.json()) {
    Json j = header("oracle-freq");
    j["oracle"] = oracle;
    j["source"] = print_term(occ);
    j["n"] = n;
    j["distribution"] = distribution_json(en);
    j["witnesses"] = judgments_json(en);
    out << j.dump(2) << '\n';
  } else {
    std::vector<std::vector<std::string>> rows;
    for (auto& e : en.distribution)
      rows.push_back({print_term(occ), "⊨^" + e.prob.str(), print_term(e.outcome), join_ids(e.witnesses)});
    print_table(out, rows);
  }
  return kExitOk;
}

void report_error(const Error& e, bool json, std::ostream& out, std::ostream& err) {
  if (json) {
    Json j{{"schema", 1},
           {"error",
            Json{{"code", std::string(code_name(e.code()))},
                 {"message", e.what()},
                 {"line", e.pos().line},
                 {"column", e.pos().column}}}};
    out << j.dump(2) << '\n';
  } else {
    err << "error: " << e.describe() << '\n';
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"olam: checker, evaluator and trust verifier for the oracle lambda calculus", "olam"};
  app.require_subcommand(1);

  Common common;
  std::uint64_t seed = 0;
  std::size_t samples = 1;
  std::string target;
  std::string epsilon;
  std::optional<std::size_t> width;
  std::string oracle;
  std::string arg;
  std::size_t n = 1;
  std::string certificate;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("program", common.program, "program file (.olam)")->required();
    sub->add_option("--oracles", common.oracles, "additional oracle files")->expected(1, -1);
    sub->add_option("--format", common.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    sub->add_option("--fuel", common.fuel, "reduction step budget")->capture_default_str();
  };

  auto* check = app.add_subcommand("check", "type-check every definition");
  add_common(check);
  auto* eval = app.add_subcommand("eval", "sample normal forms of main");
  add_common(eval);
  eval->add_option("--seed", seed, "generator seed")->capture_default_str();
  eval->add_option("--samples", samples, "number of samples")->check(CLI::PositiveNumber)->capture_default_str();
  auto* dist = app.add_subcommand("dist", "exact output distribution of main");
  add_common(dist);
  auto* trace = app.add_subcommand("trace", "static reduction sequences of main");
  add_common(trace);
  auto* trust = app.add_subcommand("trust", "trust verdict against a target distribution");
  add_common(trust);
  trust->add_option("--target", target, "target distribution (.dist)")->required();
  trust->add_option("--epsilon", epsilon, "threshold p/q");
  trust->add_option("--n", width, "tuple width for the oracle frequency view")->check(CLI::PositiveNumber);
  auto* replay = app.add_subcommand("replay", "replay a trust certificate");
  add_common(replay);
  replay->add_option("certificate", certificate, "certificate file")->required();
  replay->add_option("--target", target, "target distribution (.dist)")->required();
  replay->add_option("--epsilon", epsilon, "threshold p/q");
  replay->add_option("--n", width, "tuple width for the oracle frequency view")->check(CLI::PositiveNumber);
  auto* freq = app.add_subcommand("oracle-freq", "output frequencies of an oracle over an n-tuple");
  add_common(freq);
  freq->add_option("--oracle", oracle, "oracle name, without '#'")->required();
  freq->add_option("--arg", arg, "argument term for a unary oracle");
  freq->add_option("--n", n, "tuple width")->check(CLI::PositiveNumber)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(common, out);
    if (eval->parsed()) return cmd_eval(common, seed, samples, out);
    if (dist->parsed()) return cmd_dist(common, out);
    if (trace->parsed()) return cmd_trace(common, out);
    if (trust->parsed()) return cmd_trust(common, target, epsilon, width, out);
    if (replay->parsed()) return cmd_replay(common, certificate, target, epsilon, width, out);
    if (freq->parsed()) return cmd_oracle_freq(common, oracle, arg, n, out);
  } catch (const Error& e) {
    report_error(e, common.json(), out, err);
    return e.code() == ErrorCode::Usage || e.code() == ErrorCode::Io ? kExitUsage : kExitDomain;
  }
  return kExitUsage;
}

}  // namespace olam
