#pragma once

// Hirzebruch-Jung continued fractions and fibre chains with their contraction.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conicquot/cyclofield.hpp"

namespace conicquot {

struct HJFraction {
  long k = 1;
  long a = 1;
  std::vector<long> digits;
};

/// k/a = s_1 - 1/(s_2 - 1/(...)), all s_i >= 2.
HJFraction hj_expand(long k, long a);
Rational hj_eval(const std::vector<long>& digits);

enum class ChainOrigin { smooth_quotient, singular_quotient, custom };

struct FibreChain {
  std::vector<int> selfints;
  bool galois_swap = false;
  ChainOrigin origin = ChainOrigin::custom;

  bool is_palindrome() const;
  /// "-3,-1,-3;swap"
  std::string str() const;
};

/// Checks length >= 1 and that a swap only sits on a palindrome.
FibreChain make_chain(std::vector<int> selfints, bool galois_swap, ChainOrigin origin = ChainOrigin::custom);
FibreChain parse_chain(const std::string& text);

/// -3, -2 (a-1 times), -1, -(2a+1), -1, -2 (a-1 times), -3, swapped.
FibreChain singular_fibre_chain(int a);

/// reverse(-HJ(k/a)) ++ [c] ++ -HJ(k/(k-a)) after dividing (k, a) by their gcd;
/// c is found by search. No swap.
FibreChain smooth_fibre_chain(long k, long a);
/// Central self-intersection used by smooth_fibre_chain (search over -1..-25).
int central_selfint(long k, long a);

enum class Fate { smooth, singular };
std::string to_string(Fate f);

struct FibreFate {
  Fate fate = Fate::smooth;
  std::vector<std::vector<int>> trace;  // chain before each step and the final chain
  int contractions = 0;                 // number of curves blown down
};

/// Deterministic contraction: leftmost mirror pair first under swap, else the
/// central curve; leftmost (-1)-curve without swap.
FibreFate contract_chain(const FibreChain& ch);
/// Same rules with a random choice among admissible moves.
FibreFate contract_chain_random(const FibreChain& ch, std::uint64_t seed);

}  // namespace conicquot
