#include "conicquot/hj_chains.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

namespace conicquot {

HJFraction hj_expand(long k, long a) {
  if (!(1 <= a && a < k)) throw Error(ErrorKind::out_of_range, "need 1 <= a < k");
  if (std::gcd(k, a) != 1) throw Error(ErrorKind::not_coprime, "gcd(k, a) must be 1");
  HJFraction f{k, a, {}};
  long num = k, den = a;
  while (den != 0) {
    long s = (num + den - 1) / den;
    f.digits.push_back(s);
    long next = s * den - num;
    num = den;
    den = next;
  }
  return f;
}

Rational hj_eval(const std::vector<long>& digits) {
  if (digits.empty()) throw Error(ErrorKind::out_of_range, "empty continued fraction");
  Rational v(digits.back());
  for (std::size_t i = digits.size() - 1; i-- > 0;) {
    if (v == 0) throw Error(ErrorKind::zero_inverse, "continued fraction hits 1/0");
    v = Rational(digits[i]) - 1 / v;
  }
  v.canonicalize();
  return v;
}

bool FibreChain::is_palindrome() const { return std::equal(selfints.begin(), selfints.end(), selfints.rbegin()); }

std::string FibreChain::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < selfints.size(); ++i) os << (i ? "," : "") << selfints[i];
  if (galois_swap) os << ";swap";
  return os.str();
}

FibreChain make_chain(std::vector<int> selfints, bool galois_swap, ChainOrigin origin) {
  if (selfints.empty()) throw Error(ErrorKind::out_of_range, "empty chain");
  FibreChain ch{std::move(selfints), galois_swap, origin};
  if (galois_swap && !ch.is_palindrome())
    throw Error(ErrorKind::invalid_model, "a swapped chain must be a palindrome: " + ch.str());
  return ch;
}

FibreChain parse_chain(const std::string& text) {
  std::string body = text;
  bool swap = false;
  if (auto pos = text.find(';'); pos != std::string::npos) {
    std::string flag = text.substr(pos + 1);
    flag.erase(std::remove(flag.begin(), flag.end(), ' '), flag.end());
    if (flag == "swap") {
      swap = true;
    } else if (!flag.empty() && flag != "noswap") {
      throw Error(ErrorKind::parse_error, "unknown chain flag '" + flag + "'");
    }
    body = text.substr(0, pos);
  }
  std::vector<int> v;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int x = std::stoi(item, &used);
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
      v.push_back(x);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::parse_error, "bad self-intersection '" + item + "'");
    }
  }
  return make_chain(std::move(v), swap);
}

FibreChain singular_fibre_chain(int a) {
  if (a < 1) throw Error(ErrorKind::out_of_range, "need a >= 1");
  std::vector<int> left{-3};
  for (int j = 0; j < a - 1; ++j) left.push_back(-2);
  std::vector<int> v = left;
  v.push_back(-1);
  v.push_back(-(2 * a + 1));
  v.push_back(-1);
  v.insert(v.end(), left.rbegin(), left.rend());
  return make_chain(std::move(v), true, ChainOrigin::singular_quotient);
}

namespace {

std::vector<int> chain_with_center(long k, long a, int c) {
  auto left = hj_expand(k, a).digits;
  auto right = hj_expand(k, k - a).digits;
  std::vector<int> v;
  for (auto it = left.rbegin(); it != left.rend(); ++it) v.push_back(static_cast<int>(-*it));
  v.push_back(c);
  for (long d : right) v.push_back(static_cast<int>(-d));
  return v;
}

void blow_down(std::vector<int>& v, std::size_t i) {
  if (i > 0) ++v[i - 1];
  if (i + 1 < v.size()) ++v[i + 1];
  v.erase(v.begin() + static_cast<long>(i));
}

// Admissible moves: each is a list of positions to contract together.
std::vector<std::vector<std::size_t>> moves(const std::vector<int>& v, bool swap) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t n = v.size();
  if (n <= 1) return out;
  if (!swap) {
    for (std::size_t i = 0; i < n; ++i)
      if (v[i] == -1) out.push_back({i});
    return out;
  }
  for (std::size_t i = 0; 2 * i + 1 < n; ++i) {
    std::size_t j = n - 1 - i;
    if (v[i] == -1 && v[j] == -1 && i + 1 < j) out.push_back({i, j});
  }
  if (n % 2 == 1 && v[n / 2] == -1) out.push_back({n / 2});
  return out;
}

void apply_move(std::vector<int>& v, const std::vector<std::size_t>& mv) {
  // right to left keeps indices valid; a pair is never adjacent
  for (auto it = mv.rbegin(); it != mv.rend(); ++it) blow_down(v, *it);
}

template <class Pick>
FibreFate run(const FibreChain& ch, Pick pick) {
  if (ch.galois_swap && !ch.is_palindrome())
    throw Error(ErrorKind::invalid_model, "a swapped chain must be a palindrome: " + ch.str());
  FibreFate out;
  std::vector<int> v = ch.selfints;
  const std::size_t limit = v.size() + 1;
  for (std::size_t step = 0; step <= limit; ++step) {
    out.trace.push_back(v);
    if (v == std::vector<int>{0}) {
      out.fate = Fate::smooth;
      return out;
    }
    if (ch.galois_swap && v == std::vector<int>{-1, -1}) {
      out.fate = Fate::singular;
      return out;
    }
    auto mv = moves(v, ch.galois_swap);
    if (mv.empty()) break;
    const auto& chosen = mv[pick(mv.size())];
    out.contractions += static_cast<int>(chosen.size());
    apply_move(v, chosen);
  }
  throw Error(ErrorKind::non_terminating, "chain " + ch.str() + " does not contract to a fibre");
}

}  // namespace

int central_selfint(long k, long a) {
  std::optional<int> found;
  for (int c = -1; c >= -25; --c) {
    FibreChain ch{chain_with_center(k, a, c), false, ChainOrigin::smooth_quotient};
    try {
      if (contract_chain(ch).fate != Fate::smooth) continue;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::non_terminating) throw;
      continue;
    }
    if (found)
      throw Error(ErrorKind::ambiguous_central_curve,
                  "two central values contract for k=" + std::to_string(k) + ", a=" + std::to_string(a));
    found = c;
  }
  if (!found)
    throw Error(ErrorKind::ambiguous_central_curve,
                "no central value contracts for k=" + std::to_string(k) + ", a=" + std::to_string(a));
  return *found;
}

FibreChain smooth_fibre_chain(long k, long a) {
  if (k < 2 || a % k == 0) throw Error(ErrorKind::out_of_range, "need k >= 2 and a not divisible by k");
  a = ((a % k) + k) % k;
  const long d = std::gcd(k, a);
  k /= d;
  a /= d;
  return make_chain(chain_with_center(k, a, central_selfint(k, a)), false, ChainOrigin::smooth_quotient);
}

std::string to_string(Fate f) { return f == Fate::smooth ? "Smooth" : "Singular"; }

FibreFate contract_chain(const FibreChain& ch) {
  return run(ch, [](std::size_t) { return std::size_t{0}; });
}

FibreFate contract_chain_random(const FibreChain& ch, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return run(ch, [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); });
}

}  // namespace conicquot
