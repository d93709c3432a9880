#include "olam/trace.hpp"

#include <map>

#include "olam/context.hpp"
#include "olam/oracle.hpp"
#include "olam/overloaded.hpp"
#include "olam/surface.hpp"

namespace olam {

namespace {

constexpr std::size_t kSearchLimit = 4096;

std::string step_ref(std::size_t i) { return "step " + std::to_string(i + 1); }

bool same_step(const TraceQuadruple& a, const TraceQuadruple& b) {
  return a.label == b.label && a.q == b.q && alpha_eq(a.after, b.after);
}

}  // namespace

Rational StaticTrace::probability() const {
  Rational p = 1;
  for (auto& s : steps) p *= s.q;
  return p;
}

bool StaticTrace::has_omega() const {
  for (auto& s : steps)
    if (s.label == Label::Omega) return true;
  return false;
}

Rational Enumeration::total() const {
  Rational sum = 0;
  for (auto& e : distribution) sum += e.prob;
  return sum;
}

std::vector<Term> produced_sequence(const StaticTrace& trace) {
  std::vector<Term> out{trace.start};
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    if (!alpha_eq(trace.steps[i].before, out.back()))
      throw Error(ErrorCode::BrokenChain, step_ref(i) + " does not start where the previous one ended");
    out.push_back(trace.steps[i].after);
  }
  return out;
}

Term oracle_occurrence(const Name& oracle, const std::optional<Term>& arg) {
  return nu(arg ? oracle_app(oracle, *arg) : oracle_ref(oracle));
}

void TraceEngine::check_static(const StaticTrace& trace) const {
  produced_sequence(trace);
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceQuadruple& s = trace.steps[i];
    bool matched = false;
    bool wrong_prob = false;
    for (auto& r : reducer_->find_redexes(s.before)) {
      for (auto& o : reducer_->step(s.before, r)) {
        if (o.label != s.label || !alpha_eq(o.term, s.after)) continue;
        if (o.prob == s.q) matched = true;
        else wrong_prob = true;
      }
      if (matched) break;
    }
    if (matched) continue;
    if (wrong_prob)
      throw Error(ErrorCode::ProbabilityMismatch, step_ref(i) + " records probability " + s.q.str() +
                                                      ", which no reduction of '" + print_term(s.before) + "' has");
    if (s.label == Label::Omega)
      throw Error(ErrorCode::OracleReplayMismatch,
                  step_ref(i) + ": replaying the oracle on '" + print_term(s.before) + "' does not give '" +
                      print_term(s.after) + "'");
    throw Error(ErrorCode::RuleMismatch, step_ref(i) + ": no " + std::string(label_name(s.label)) +
                                             " reduction takes '" + print_term(s.before) + "' to '" +
                                             print_term(s.after) + "'");
  }
}

bool TraceEngine::not_equiv_nd(const StaticTrace& a, const StaticTrace& b) const {
  if (a.has_omega() || b.has_omega()) return false;
  if (!alpha_eq(a.start, b.start)) return false;
  std::size_t n = std::min(a.steps.size(), b.steps.size());
  std::size_t i = 0;
  while (i < n && same_step(a.steps[i], b.steps[i])) ++i;
  if (i == n) return false;
  const TraceQuadruple* left = &a.steps[i];
  const TraceQuadruple* right = &b.steps[i];
  if (left->label == Label::Right) std::swap(left, right);
  if (left->label != Label::Left || right->label != Label::Right) return false;
  if (!alpha_eq(left->before, right->before)) return false;
  if (right->q != Rational(1) - left->q) return false;
  for (auto& r : reducer_->find_redexes(left->before)) {
    if (r.kind != RedexKind::ChoiceNu) continue;
    auto outs = reducer_->step(left->before, r);
    if (outs[0].prob == left->q && alpha_eq(outs[0].term, left->after) && alpha_eq(outs[1].term, right->after))
      return true;
  }
  return false;
}

void TraceEngine::check_trace(const Witness& witness, const MapstoClaim& claim) const {
  if (claim.prob.is_zero() || !claim.prob.is_probability())
    throw Error(ErrorCode::ProbabilityMismatch, "claimed probability " + claim.prob.str() + " not in (0,1]");

  auto endpoints = [&](const StaticTrace& t, const std::string& what) {
    if (!alpha_eq(t.start, claim.source))
      throw Error(ErrorCode::RuleMismatch, what + " starts at '" + print_term(t.start) + "', not at the claimed '" +
                                               print_term(claim.source) + "'");
    if (!alpha_eq(t.last(), claim.target))
      throw Error(ErrorCode::RuleMismatch, what + " ends at '" + print_term(t.last()) + "', not at the claimed '" +
                                               print_term(claim.target) + "'");
  };

  std::visit(
      overloaded{
          [&](const StaticTrace& t) {
            check_static(t);
            endpoints(t, "trace");
            if (t.probability() != claim.prob)
              throw Error(ErrorCode::ProbabilityMismatch,
                          "trace has probability " + t.probability().str() + ", claim says " + claim.prob.str());
          },
          [&](const MergeWitness& m) {
            if (m.branches.empty()) throw Error(ErrorCode::RuleMismatch, "merge with no branches");
            Rational sum = 0;
            for (std::size_t i = 0; i < m.branches.size(); ++i) {
              check_static(m.branches[i]);
              endpoints(m.branches[i], "branch " + std::to_string(i + 1));
              sum += m.branches[i].probability();
            }
            for (std::size_t i = 0; i < m.branches.size(); ++i)
              for (std::size_t j = i + 1; j < m.branches.size(); ++j)
                if (!not_equiv_nd(m.branches[i], m.branches[j]))
                  throw Error(ErrorCode::NDConditionViolated, "branches " + std::to_string(i + 1) + " and " +
                                                                  std::to_string(j + 1) + " are not disjoint");
            if (sum != claim.prob)
              throw Error(ErrorCode::ProbabilityMismatch,
                          "branches sum to " + sum.str() + ", claim says " + claim.prob.str());
          },
          [&](const FrequencyWitness& f) {
            if (f.width == 0) throw Error(ErrorCode::RuleMismatch, "frequency witness of width 0");
            if (!oracle_redex_shape(claim.source))
              throw Error(ErrorCode::RuleMismatch, "'" + print_term(claim.source) + "' is not an oracle occurrence");
            const StaticTrace& t = f.tuple_trace;
            if (t.steps.size() != 1 || t.steps[0].label != Label::Omega)
              throw Error(ErrorCode::RuleMismatch, "frequency witness must be a single oracle step");
            if (!alpha_eq(t.start, tuple(std::vector<Term>(f.width, claim.source))))
              throw Error(ErrorCode::RuleMismatch, "frequency witness does not start at the " +
                                                       std::to_string(f.width) + "-tuple of the source");
            check_static(t);
            auto outs = untuple(t.last(), f.width);
            if (!outs) throw Error(ErrorCode::RuleMismatch, "oracle step did not produce a tuple");
            std::size_t m = 0;
            for (auto& o : *outs) m += alpha_eq(o, claim.target);
            if (m == 0)
              throw Error(ErrorCode::RuleMismatch, "'" + print_term(claim.target) + "' is not among the oracle outputs");
            Rational freq(static_cast<std::int64_t>(m));
            freq /= Rational(static_cast<std::int64_t>(f.width));
            if (freq != claim.prob)
              throw Error(ErrorCode::ProbabilityMismatch,
                          "output occurs with frequency " + freq.str() + ", claim says " + claim.prob.str());
          },
      },
      witness);
}

namespace {

/// All labelled traces realising a term sequence, up to a limit.
std::vector<StaticTrace> realisations(const Reducer& red, const std::vector<Term>& seq) {
  std::vector<StaticTrace> out{StaticTrace{seq.front(), {}}};
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    std::vector<TraceQuadruple> options;
    for (auto& r : red.find_redexes(seq[i]))
      for (auto& o : red.step(seq[i], r))
        if (alpha_eq(o.term, seq[i + 1]) && !o.prob.is_zero())
          options.push_back(TraceQuadruple{seq[i], seq[i + 1], o.prob, o.label});
    if (options.empty())
      throw Error(ErrorCode::RuleMismatch, step_ref(i) + ": '" + print_term(seq[i]) + "' does not reduce to '" +
                                               print_term(seq[i + 1]) + "'");
    std::vector<StaticTrace> next;
    for (auto& partial : out)
      for (auto& q : options) {
        if (next.size() >= kSearchLimit) break;
        StaticTrace t = partial;
        t.steps.push_back(q);
        next.push_back(std::move(t));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

MapstoJudgment TraceEngine::type_of_trace_term(const Term& t) const {
  if (auto* c = as<term::CompList>(t)) {
    if (c->steps.empty()) throw Error(ErrorCode::RuleMismatch, "empty computation");
    auto options = realisations(*reducer_, c->steps);
    for (auto& o : options) {
      if (c->prob && o.probability() != *c->prob) continue;
      MapstoJudgment j{MapstoClaim{o.start, o.last(), o.probability()}, o};
      check_trace(j.witness, j.claim);
      return j;
    }
    throw Error(ErrorCode::ProbabilityMismatch, "no reading of the computation has probability " + c->prob->str());
  }
  if (auto* m = as<term::CompMerge>(t)) {
    if (m->branches.empty()) throw Error(ErrorCode::RuleMismatch, "merge with no branches");
    std::vector<std::vector<StaticTrace>> per_branch;
    for (auto& b : m->branches) {
      if (b.empty() || !alpha_eq(b.front(), m->source) || !alpha_eq(b.back(), m->target))
        throw Error(ErrorCode::RuleMismatch, "every branch must run from the source to the target");
      per_branch.push_back(realisations(*reducer_, b));
    }
    std::vector<std::size_t> pick(per_branch.size(), 0);
    bool saw_disjoint = false;
    for (std::size_t tries = 0; tries < kSearchLimit; ++tries) {
      MergeWitness w;
      for (std::size_t i = 0; i < pick.size(); ++i) w.branches.push_back(per_branch[i][pick[i]]);
      bool disjoint = true;
      for (std::size_t i = 0; i < w.branches.size() && disjoint; ++i)
        for (std::size_t j = i + 1; j < w.branches.size() && disjoint; ++j)
          disjoint = not_equiv_nd(w.branches[i], w.branches[j]);
      if (disjoint) {
        saw_disjoint = true;
        Rational sum = 0;
        for (auto& b : w.branches) sum += b.probability();
        if (!m->prob || sum == *m->prob) {
          MapstoJudgment j{MapstoClaim{m->source, m->target, sum}, std::move(w)};
          check_trace(j.witness, j.claim);
          return j;
        }
      }
      std::size_t k = 0;
      while (k < pick.size() && ++pick[k] == per_branch[k].size()) pick[k++] = 0;
      if (k == pick.size()) break;
    }
    if (!saw_disjoint) throw Error(ErrorCode::NDConditionViolated, "the merged branches are not pairwise disjoint");
    throw Error(ErrorCode::ProbabilityMismatch, "no reading of the merge has probability " + m->prob->str());
  }
  throw Error(ErrorCode::RuleMismatch, "'" + print_term(t) + "' is not a computation term");
}

Term TraceEngine::witness_term(const MapstoJudgment& j) const {
  return std::visit(overloaded{
                        [&](const StaticTrace& t) { return comp_list(produced_sequence(t), j.claim.prob); },
                        [&](const MergeWitness& m) {
                          std::vector<std::vector<Term>> branches;
                          for (auto& b : m.branches) branches.push_back(produced_sequence(b));
                          return comp_merge(j.claim.source, std::move(branches), j.claim.target, j.claim.prob);
                        },
                        [&](const FrequencyWitness&) -> Term {
                          throw Error(ErrorCode::RuleMismatch, "frequency witnesses have no computation term");
                        },
                    },
                    j.witness);
}

Enumeration TraceEngine::enumerate_distribution(const Term& t, std::size_t fuel) const {
  struct Leaf {
    Term outcome;
    std::vector<StaticTrace> traces;
  };
  std::map<std::string, Leaf> leaves;
  Enumeration out;

  std::vector<StaticTrace> stack{StaticTrace{t, {}}};
  std::size_t used = 0;
  while (!stack.empty()) {
    StaticTrace cur = std::move(stack.back());
    stack.pop_back();
    const Term& here = cur.last();
    auto r = reducer_->deterministic_strategy(here);
    if (!r) {
      auto [it, fresh] = leaves.try_emplace(canonical_form(here), Leaf{here, {}});
      it->second.traces.push_back(cur);
      out.paths.push_back(std::move(cur));
      continue;
    }
    if (++used > fuel)
      throw Error(ErrorCode::FuelExhausted, "enumeration needs more than " + std::to_string(fuel) + " steps");
    auto outs = reducer_->step(here, *r);
    for (std::size_t k = outs.size(); k-- > 0;) {
      if (outs[k].prob.is_zero()) continue;
      StaticTrace next = cur;
      next.steps.push_back(TraceQuadruple{here, outs[k].term, outs[k].prob, outs[k].label});
      stack.push_back(std::move(next));
    }
  }

  for (auto& [key, leaf] : leaves) {
    DistributionEntry e{leaf.outcome, 0, {}};
    MergeWitness plain;
    for (auto& tr : leaf.traces) {
      e.prob += tr.probability();
      if (!tr.has_omega()) plain.branches.push_back(tr);
    }
    if (!plain.branches.empty()) {
      Rational p = 0;
      for (auto& b : plain.branches) p += b.probability();
      e.witnesses.push_back(out.judgments.size());
      out.judgments.push_back(MapstoJudgment{MapstoClaim{t, leaf.outcome, p}, std::move(plain)});
    }
    for (auto& tr : leaf.traces) {
      if (!tr.has_omega()) continue;
      e.witnesses.push_back(out.judgments.size());
      out.judgments.push_back(
          MapstoJudgment{MapstoClaim{t, leaf.outcome, tr.probability()}, MergeWitness{{tr}}});
    }
    out.distribution.push_back(std::move(e));
  }
  return out;
}

Enumeration TraceEngine::oracle_frequency(const Name& oracle, const std::optional<Term>& arg, std::size_t n) const {
  if (n == 0) throw Error(ErrorCode::Usage, "sample width must be at least 1");
  const OracleDef& def = reducer_->checker().oracles().get(oracle);
  if ((def.arity == 1) != arg.has_value())
    throw Error(ErrorCode::Usage, "oracle '#" + oracle + "' has arity " + std::to_string(def.arity) +
                                      (arg ? " but an argument was given" : " but no argument was given"));
  Term occ = oracle_occurrence(oracle, arg);
  Term start = tuple(std::vector<Term>(n, occ));

  std::optional<TermRedex> fire;
  for (auto& r : reducer_->find_redexes(start))
    if (r.oracle == oracle) {
      fire = r;
      break;
    }
  auto outs = reducer_->step(start, *fire);
  StaticTrace trace{start, {TraceQuadruple{start, outs[0].term, outs[0].prob, outs[0].label}}};
  auto outputs = *untuple(outs[0].term, n);

  std::map<std::string, std::pair<Term, std::int64_t>> counts;
  for (auto& o : outputs) {
    auto [it, fresh] = counts.try_emplace(canonical_form(o), o, 0);
    ++it->second.second;
  }
  Enumeration out;
  for (auto& [key, entry] : counts) {
    Rational p(entry.second);
    p /= Rational(static_cast<std::int64_t>(n));
    out.distribution.push_back(DistributionEntry{entry.first, p, {out.judgments.size()}});
    out.judgments.push_back(MapstoJudgment{MapstoClaim{occ, entry.first, p}, FrequencyWitness{n, trace}});
  }
  out.paths.push_back(std::move(trace));
  return out;
}

}  // namespace olam
