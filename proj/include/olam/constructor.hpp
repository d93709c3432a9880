#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "olam/syntax.hpp"

namespace olam {

inline constexpr std::size_t kDefaultFuel = 100000;

/// A constructor redex `(\\x:A. phi) t`, addressed by constructor positions.
struct ConRedex {
  Path path;
};

enum class ConStrategy { LeftmostOutermost, RightmostInnermost };

/// Redexes in preorder.
std::vector<ConRedex> find_con_redexes(const TypeCon& phi);
std::optional<ConRedex> select_con_redex(const TypeCon& phi, ConStrategy strategy);

/// (\\x:A. phi) t  ~>  phi[t/x] at the redex. Throws InvalidRedexPath.
TypeCon con_step(const TypeCon& phi, const ConRedex& r);

/// Throws FuelExhausted after `fuel` steps.
TypeCon normalize_con(const TypeCon& phi, ConStrategy strategy = ConStrategy::LeftmostOutermost,
                      std::size_t fuel = kDefaultFuel);
Kind normalize_kind(const Kind& k, std::size_t fuel = kDefaultFuel);

/// Normal form under beta and projection steps only, everywhere in the
/// term including type annotations. Choices and oracles are left alone.
Term normalize_deterministic(const Term& t, std::size_t fuel = kDefaultFuel);

/// Constructor normal form whose embedded terms are also in deterministic
/// normal form.
TypeCon deep_normalize(const TypeCon& phi, std::size_t fuel = kDefaultFuel);

bool con_equiv(const TypeCon& a, const TypeCon& b);
bool kind_equiv(const Kind& a, const Kind& b);

/// The connective tree of a type: embedded terms and binder names erased.
std::string skeleton(const TypeCon& phi);

}  // namespace olam
