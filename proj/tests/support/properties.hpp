#pragma once

#include <cstdint>
#include <string>

#include "olam/constructor.hpp"
#include "olam/surface.hpp"
#include "olam/trace.hpp"
#include "support/brute_force.hpp"
#include "support/generators.hpp"
#include "support/signature.hpp"

namespace olam::testing {

struct PropertyResult {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void fail(const std::string& why) {
    if (failures++ == 0) first_failure = why;
  }
  bool ok() const { return failures == 0; }
};

/// Every one-step reduct of a generated well-typed term re-typechecks with
/// the same connective skeleton; β and π reducts keep a ≡β-equal type.
inline PropertyResult subject_reduction(std::uint64_t seed, std::size_t count, int depth) {
  Program p = signature_program();
  Gen g(seed);
  PropertyResult r;
  for (std::size_t i = 0; i < count; ++i) {
    Term t = g.typed_any(depth);
    ++r.cases;
    try {
      TypeCon ty = p.type_of(t);
      for (auto& redex : p.reducer().find_redexes(t))
        for (auto& o : p.reducer().step(t, redex)) {
          TypeCon ty2 = p.type_of(o.term);
          if (skeleton(ty2) != skeleton(ty)) {
            r.fail(print_term(t) + " -> " + print_term(o.term) + ": " + print_type(ty) + " vs " + print_type(ty2));
          } else if ((redex.kind == RedexKind::Beta || redex.kind == RedexKind::Proj) && !con_equiv(ty, ty2)) {
            r.fail(print_term(t) + " -> " + print_term(o.term) + ": type changed to " + print_type(ty2));
          }
        }
    } catch (const Error& e) {
      r.fail(print_term(t) + ": " + e.describe());
    }
  }
  return r;
}

/// Generated well-typed terms normalize under sampling and enumeration.
inline PropertyResult strong_normalization(std::uint64_t seed, std::size_t count, int depth,
                                           std::size_t fuel = kDefaultFuel) {
  Program p = signature_program();
  Gen g(seed);
  PropertyResult r;
  for (std::size_t i = 0; i < count; ++i) {
    Term t = g.typed_any(depth);
    ++r.cases;
    try {
      auto s = p.reducer().run_sample(t, seed + i, fuel);
      if (!p.reducer().find_redexes(s.normal_form).empty()) r.fail(print_term(t) + ": sample not normal");
      Enumeration en = p.engine().enumerate_distribution(t, fuel);
      if (en.total() != Rational(1)) r.fail(print_term(t) + ": total " + en.total().str());
    } catch (const Error& e) {
      r.fail(print_term(t) + ": " + e.describe());
    }
  }
  return r;
}

/// Kind-checked constructors reach α-equal normal forms under both
/// strategies.
inline PropertyResult constructor_confluence(std::uint64_t seed, std::size_t count, int depth) {
  Program p = signature_program();
  Gen g(seed);
  PropertyResult r;
  for (std::size_t i = 0; i < count; ++i) {
    TypeCon phi = g.typed_con(depth);
    ++r.cases;
    try {
      p.checker().check_is_type(p.globals(), phi);
      TypeCon lo = normalize_con(phi, ConStrategy::LeftmostOutermost);
      TypeCon ri = normalize_con(phi, ConStrategy::RightmostInnermost);
      if (!alpha_eq(lo, ri)) r.fail(print_type(phi) + ": " + print_type(lo) + " vs " + print_type(ri));
      if (!find_con_redexes(lo).empty()) r.fail(print_type(phi) + ": result not normal");
    } catch (const Error& e) {
      r.fail(print_type(phi) + ": " + e.describe());
    }
  }
  return r;
}

/// (θ[t/x])[(s[t/x])/y] is α-equal to (θ[s/y])[t/x] whenever x ≠ y and
/// y is not free in t.
inline PropertyResult substitution_commutes(std::uint64_t seed, std::size_t count, int depth) {
  Gen g(seed);
  PropertyResult r;
  const std::vector<Name> names{"x", "y", "z", "u", "a"};
  while (r.cases < count) {
    Term theta = g.raw_term(depth, names);
    Term t = g.raw_term(depth - 2, names);
    Term s = g.raw_term(depth - 2, names);
    Name x = g.coin() ? "x" : "z";
    Name y = x == "x" ? (g.coin() ? "y" : "u") : "y";
    if (free_term_vars(t).contains(y)) continue;
    ++r.cases;
    Term lhs = substitute_term(substitute_term(theta, x, t), y, substitute_term(s, x, t));
    Term rhs = substitute_term(substitute_term(theta, y, s), x, t);
    if (!alpha_eq(lhs, rhs))
      r.fail("theta=" + print_term(theta) + " t=" + print_term(t) + " s=" + print_term(s) + " x=" + x + " y=" + y);
  }
  return r;
}

/// parse ∘ print is the identity up to α on terms, types and kinds.
inline PropertyResult round_trip(std::uint64_t seed, std::size_t count, int depth) {
  Gen g(seed);
  PropertyResult r;
  for (std::size_t i = 0; i < count; ++i) {
    ++r.cases;
    std::string text;
    try {
      switch (i % 3) {
        case 0: {
          Term t = g.raw_term(depth);
          text = print_term(t);
          if (!alpha_eq(parse_term(text), t)) r.fail("term " + text);
          break;
        }
        case 1: {
          TypeCon c = g.raw_type(depth);
          text = print_type(c);
          if (!alpha_eq(parse_type(text), c)) r.fail("type " + text);
          break;
        }
        default: {
          Kind k = g.raw_kind(depth);
          text = print_kind(k);
          if (!alpha_eq(parse_kind(text), k)) r.fail("kind " + text);
        }
      }
    } catch (const Error& e) {
      r.fail(text + ": " + e.describe());
    }
  }
  return r;
}

/// The trace engine agrees with exhaustive decision-vector exploration and
/// every emitted judgment re-checks.
inline PropertyResult enumeration_agreement(std::uint64_t seed, std::size_t count, int depth) {
  Program p = signature_program();
  Gen g(seed);
  PropertyResult r;
  for (std::size_t i = 0; i < count; ++i) {
    Term t = g.typed_any(depth);
    ++r.cases;
    try {
      Enumeration en = p.engine().enumerate_distribution(t);
      std::map<std::string, Rational> mine;
      for (auto& e : en.distribution) mine[canonical_form(e.outcome)] = e.prob;
      if (mine != brute_distribution(p.reducer(), t)) r.fail(print_term(t) + ": distributions differ");
      for (auto& j : en.judgments) p.engine().check_trace(j.witness, j.claim);
    } catch (const std::exception& e) {
      r.fail(print_term(t) + ": " + e.what());
    }
  }
  return r;
}

}  // namespace olam::testing
