#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "olam/syntax.hpp"

namespace olam::testing {

/// Hand-rolled random generators over the shared signature. Every
/// generator is a pure function of the seed.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int pick(int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng_)); }
  bool coin() { return pick(2) == 0; }
  template <class T>
  const T& one_of(const std::vector<T>& xs) { return xs[static_cast<std::size_t>(pick(static_cast<int>(xs.size())))]; }

  Rational prob() {
    static const std::vector<std::pair<int, int>> ps{{1, 2}, {1, 3}, {2, 3}, {1, 4}, {3, 4}, {1, 1}, {0, 1}, {2, 5}};
    auto [n, d] = one_of(ps);
    return Rational(n) / Rational(d);
  }

  // --- well-typed closed terms ------------------------------------------------

  /// A closed term of type A. At most `choices` choice nodes are spent.
  Term typed_a(int depth) {
    choices_ = 4;
    return term_a(depth, {});
  }
  Term typed_b(int depth) {
    choices_ = 4;
    return term_b(depth, {});
  }
  /// A closed term of a randomly picked type among A, B, A -> A, A /\ B,
  /// Oplus A, P t /\ A.
  Term typed_any(int depth) {
    choices_ = 4;
    switch (pick(6)) {
      case 0: return term_a(depth, {});
      case 1: return term_b(depth, {});
      case 2: return term_fun(depth, {});
      case 3: return pair(term_a(depth - 1, {}), term_b(depth - 1, {}));
      case 4: return term_oplus(depth, {});
      default: return pair(term_p(depth - 1, {}), term_a(depth - 1, {}));
    }
  }

  // --- kind-checked constructors of kind * -----------------------------------

  TypeCon typed_con(int depth) { return con_star(depth, {}); }

  // --- raw syntax for round trips and substitution ----------------------------

  Term raw_term(int depth, const std::vector<Name>& names = {"x", "y", "z", "u", "a", "b"}) {
    names_ = names;
    return raw(depth);
  }
  TypeCon raw_type(int depth) {
    names_ = {"x", "y", "z", "u", "a", "b"};
    return raw_con(depth);
  }
  Kind raw_kind(int depth) {
    names_ = {"x", "y", "z", "u", "a", "b"};
    return raw_k(depth);
  }

 private:
  Name binder() { return one_of(std::vector<Name>{"x", "y", "z"}); }
  bool spend_choice() {
    if (choices_ == 0) return false;
    --choices_;
    return true;
  }

  Term leaf_a(const std::vector<Name>& vars) {
    if (!vars.empty() && coin()) return var(one_of(vars));
    return var(coin() ? "a" : "a2");
  }

  Term term_a(int depth, std::vector<Name> vars) {
    if (depth <= 0) return leaf_a(vars);
    switch (pick(9)) {
      case 0: return leaf_a(vars);
      case 1: {
        Name x = binder();
        auto inner = vars;
        inner.push_back(x);
        return app(lam(x, con_var("A"), term_a(depth - 1, inner)), term_a(depth - 1, vars));
      }
      case 2: return proj(pair(term_a(depth - 1, vars), term_b(depth - 1, vars)), 0);
      case 3: return proj(pair(term_a(depth - 1, vars), term_p(depth - 1, vars)), 0);
      case 4:
        if (spend_choice()) return nu(choice(term_a(depth - 1, vars), prob(), term_a(depth - 1, vars)));
        return leaf_a(vars);
      case 5: return nu(oracle_ref("coin"));
      case 6: return app(term_fun(depth - 1, vars), term_a(depth - 1, vars));
      case 7: return proj(pair(term_b(depth - 1, vars), term_a(depth - 1, vars)), 1);
      default:
        if (spend_choice()) return nu(term_oplus(depth - 1, vars));
        return leaf_a(vars);
    }
  }

  Term term_b(int depth, std::vector<Name> vars) {
    if (depth <= 0) return var(coin() ? "b" : "b2");
    switch (pick(5)) {
      case 0: return var(coin() ? "b" : "b2");
      case 1: return proj(pair(term_a(depth - 1, vars), term_b(depth - 1, vars)), 1);
      case 2: return nu(oracle_app("f", term_a(depth - 1, vars)));
      case 3: {
        Name x = binder();
        auto inner = vars;
        inner.push_back(x);
        return app(lam(x, con_var("A"), term_b(depth - 1, inner)), term_a(depth - 1, vars));
      }
      default:
        if (spend_choice()) return nu(choice(term_b(depth - 1, vars), prob(), term_b(depth - 1, vars)));
        return var("b");
    }
  }

  Term term_fun(int depth, std::vector<Name> vars) {
    Name x = binder();
    auto inner = vars;
    inner.push_back(x);
    if (depth > 1 && pick(4) == 0 && spend_choice())
      return nu(choice(lam(x, con_var("A"), term_a(depth - 2, inner)), prob(),
                       lam(x, con_var("A"), term_a(depth - 2, inner))));
    return lam(x, con_var("A"), term_a(depth - 1, inner));
  }

  Term term_oplus(int depth, std::vector<Name> vars) {
    return choice(term_a(depth - 1, vars), prob(), term_a(depth - 1, vars));
  }

  /// A term of type P t for some t : A.
  Term term_p(int depth, std::vector<Name> vars) { return app(var("prf"), term_a(depth - 1, vars)); }

  Term con_index(std::vector<Name> vars) {
    switch (pick(4)) {
      case 0: return var("a");
      case 1: return var("a2");
      case 2: return app(lam("w", con_var("A"), var("w")), var("a"));
      default: return vars.empty() ? var("a") : var(one_of(vars));
    }
  }

  TypeCon con_star(int depth, std::vector<Name> vars) {
    if (depth <= 0) {
      switch (pick(4)) {
        case 0: return con_var("A");
        case 1: return con_var("B");
        case 2: return bottom();
        default: return con_app(con_var("P"), con_index(vars));
      }
    }
    Name x = binder();
    auto inner = vars;
    inner.push_back(x);
    switch (pick(9)) {
      case 0: return forall(x, con_var("A"), con_star(depth - 1, inner));
      case 1: return arrow(con_star(depth - 1, vars), con_star(depth - 1, vars));
      case 2: return conj(con_star(depth - 1, vars), con_star(depth - 1, vars));
      case 3: return oplus(con_star(depth - 1, vars));
      case 4: return sigma(con_star(depth - 1, vars));
      case 5:
      case 6: return con_app(con_lam(x, con_var("A"), con_star(depth - 1, inner)), con_index(vars));
      case 7: {
        Name y = x == "x" ? "y" : "x";
        auto both = inner;
        both.push_back(y);
        TypeCon body = con_lam(y, con_var("A"), con_star(depth - 1, both));
        return con_app(con_app(con_lam(x, con_var("A"), body), con_index(vars)), con_index(vars));
      }
      default: {
        TypeCon fam = con_lam(x, con_var("A"), con_app(con_var("P"), var(x)));
        return con_app(con_lam("q", con_var("A"), con_app(fam, var("q"))), con_index(vars));
      }
    }
  }

  Name raw_name() { return one_of(names_); }

  Term raw(int depth) {
    if (depth <= 0) {
      switch (pick(3)) {
        case 0: return nu(oracle_ref("coin"));
        default: return var(raw_name());
      }
    }
    switch (pick(12)) {
      case 0: return var(raw_name());
      case 1: return oracle_ref(coin() ? "coin" : "f");
      case 2: return oracle_app("f", raw(depth - 1));
      case 3: return lam(binder(), raw_con(depth - 1), raw(depth - 1));
      case 4:
      case 5: return app(raw(depth - 1), raw(depth - 1));
      case 6: return choice(raw(depth - 1), prob(), raw(depth - 1));
      case 7: return nu(raw(depth - 1));
      case 8: return pair(raw(depth - 1), raw(depth - 1));
      case 9: return proj(raw(depth - 1), pick(2));
      case 10: return efq(raw(depth - 1), raw_con(depth - 1));
      default: return app(oracle_ref("f"), raw(depth - 1));
    }
  }

  TypeCon raw_con(int depth) {
    if (depth <= 0) {
      switch (pick(4)) {
        case 0: return con_var("A");
        case 1: return con_var("B");
        case 2: return bottom();
        default: return con_var("P");
      }
    }
    switch (pick(9)) {
      case 0: return con_var(coin() ? "A" : "Q");
      case 1: return con_lam(binder(), raw_con(depth - 1), raw_con(depth - 1));
      case 2: return con_app(raw_con(depth - 1), raw(depth - 1));
      case 3: return forall(binder(), raw_con(depth - 1), raw_con(depth - 1));
      case 4: return arrow(raw_con(depth - 1), raw_con(depth - 1));
      case 5: return oplus(raw_con(depth - 1));
      case 6: return sigma(raw_con(depth - 1));
      case 7: return conj(raw_con(depth - 1), raw_con(depth - 1));
      default: return bottom();
    }
  }

  Kind raw_k(int depth) {
    if (depth <= 0 || coin()) return star();
    return pi(binder(), raw_con(depth - 1), raw_k(depth - 1));
  }

  std::mt19937_64 rng_;
  int choices_ = 4;
  std::vector<Name> names_;
};

}  // namespace olam::testing
