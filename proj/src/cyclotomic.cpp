#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

#include "conicquot/cyclofield.hpp"

namespace conicquot {

Rational parse_rational(const std::string& text) {
  std::string t;
  for (char c : text)
    if (c != ' ') t += c;
  if (t.empty()) throw Error(ErrorKind::parse_error, "empty rational");
  if (t.front() == '+') t.erase(t.begin());
  Rational q;
  if (q.set_str(t, 10) != 0) throw Error(ErrorKind::parse_error, "bad rational '" + text + "'");
  if (q.get_den() == 0) throw Error(ErrorKind::parse_error, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

long gcd_long(long a, long b) { return std::gcd(a, b); }
long lcm_long(long a, long b) { return std::lcm(a, b); }

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

int carmichael_lambda(int n) {
  int result = 1;
  for (int p = 2; n > 1; ++p) {
    if (n % p != 0) continue;
    int pk = 1, k = 0;
    while (n % p == 0) {
      n /= p;
      pk *= p;
      ++k;
    }
    int lam = pk / p * (p - 1);
    if (p == 2 && k >= 3) lam /= 2;
    result = std::lcm(result, lam);
  }
  return result;
}

std::vector<int> units_mod(int n) {
  std::vector<int> out;
  for (int j = 0; j < std::max(n, 1); ++j)
    if (std::gcd(j, n) == 1) out.push_back(j);
  if (n == 1) out = {0};
  return out;
}

namespace {

constexpr int kTableSize = 2 * kMaxConductor + 1;

std::vector<long> poly_exact_div(std::vector<long> num, const std::vector<long>& den) {
  // den monic
  const std::size_t dn = den.size() - 1;
  std::vector<long> quot(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    long c = num[i];
    quot[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return quot;
}

std::array<std::vector<long>, kTableSize> build_cyclotomic_table() {
  std::array<std::vector<long>, kTableSize> table;
  for (int n = 1; n < kTableSize; ++n) {
    std::vector<long> p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
      if (n % d == 0) p = poly_exact_div(p, table[d]);
    table[n] = p;
  }
  return table;
}

void check_conductor(int n) {
  if (n < 1 || n >= kTableSize)
    throw Error(ErrorKind::conductor_too_small,
                "conductor " + std::to_string(n) + " outside supported range 1.." +
                    std::to_string(kTableSize - 1));
}

void reduce_mod_cyclotomic(int n, std::vector<Rational>& c) {
  const auto& phi_poly = cyclotomic_polynomial(n);
  const std::size_t deg = phi_poly.size() - 1;
  for (std::size_t i = c.size(); i-- > deg;) {
    if (c[i] == 0) continue;
    Rational lead = c[i];
    for (std::size_t j = 0; j < deg; ++j)
      if (phi_poly[j] != 0) c[i - deg + j] -= lead * phi_poly[j];
    c[i] = 0;
  }
  c.resize(deg);
}

}  // namespace

const std::vector<long>& cyclotomic_polynomial(int n) {
  static const auto table = build_cyclotomic_table();
  check_conductor(n);
  return table[n];
}

CycloNum::CycloNum(int conductor) : conductor_(conductor) {
  check_conductor(conductor);
  coeffs_.assign(euler_phi(conductor), Rational(0));
}

CycloNum::CycloNum(int conductor, std::vector<Rational> coeffs)
    : conductor_(conductor), coeffs_(std::move(coeffs)) {
  check_conductor(conductor);
  const std::size_t deg = euler_phi(conductor);
  if (coeffs_.size() < deg) coeffs_.resize(deg, Rational(0));
  reduce_mod_cyclotomic(conductor_, coeffs_);
}

CycloNum CycloNum::rational(int conductor, const Rational& value) {
  CycloNum x(conductor);
  x.coeffs_[0] = value;
  return x;
}

CycloNum CycloNum::root_of_unity(int conductor, long j) {
  check_conductor(conductor);
  long e = ((j % conductor) + conductor) % conductor;
  std::vector<Rational> c(std::max<long>(e + 1, euler_phi(conductor)), Rational(0));
  c[e] = 1;
  return CycloNum(conductor, std::move(c));
}

std::optional<CycloNum> CycloNum::root_of_unity_in(int conductor, int m, long j) {
  if (m < 1) throw Error(ErrorKind::out_of_range, "root of unity order must be positive");
  if (conductor % m == 0) return root_of_unity(conductor, (conductor / m) * j);
  if (m % 2 == 0 && (m / 2) % 2 == 1 && conductor % (m / 2) == 0) {
    // xi_m = -xi_{m/2}^{(m/2+1)/2} for m/2 odd
    const long h = m / 2;
    long e = ((j % m) + m) % m;
    CycloNum r = root_of_unity(conductor, (conductor / h) * (e * ((h + 1) / 2)));
    return (e % 2 == 1) ? -r : r;
  }
  return std::nullopt;
}

CycloNum CycloNum::i(int conductor) {
  auto r = root_of_unity_in(conductor, 4);
  if (!r) throw Error(ErrorKind::conductor_too_small, "i needs 4 | conductor");
  return *r;
}

std::optional<CycloNum> CycloNum::two_cos(int conductor, int m, long j) {
  auto a = root_of_unity_in(conductor, m, j);
  auto b = root_of_unity_in(conductor, m, -j);
  if (!a || !b) return std::nullopt;
  return *a + *b;
}

std::optional<CycloNum> CycloNum::sqrt_integer(int conductor, long n) {
  return nth_root(rational(conductor, n), 2);
}

bool CycloNum::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return q == 0; });
}

bool CycloNum::is_one() const { return is_rational() && coeffs_[0] == 1; }

bool CycloNum::is_rational() const {
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& q) { return q == 0; });
}

CycloNum CycloNum::embed(int target) const {
  if (target == conductor_) return *this;
  check_conductor(target);
  auto z = root_of_unity_in(target, conductor_);
  if (!z)
    throw Error(ErrorKind::conductor_mismatch, "Q(xi_" + std::to_string(conductor_) +
                                                   ") is not contained in Q(xi_" +
                                                   std::to_string(target) + ")");
  CycloNum acc(target);
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    acc *= *z;
    acc.coeffs_[0] += coeffs_[k];
  }
  return acc;
}

int common_conductor(int a, int b) {
  if (a % b == 0) return a;
  if (b % a == 0) return b;
  long l = std::lcm(a, b);
  if (l >= kTableSize)
    throw Error(ErrorKind::conductor_mismatch,
                "no common conductor <= " + std::to_string(kTableSize - 1) + " for " +
                    std::to_string(a) + " and " + std::to_string(b));
  return static_cast<int>(l);
}

void unify(CycloNum& a, CycloNum& b) {
  if (a.conductor() == b.conductor()) return;
  if (CycloNum::root_of_unity_in(a.conductor(), b.conductor())) {
    b = b.embed(a.conductor());
    return;
  }
  if (CycloNum::root_of_unity_in(b.conductor(), a.conductor())) {
    a = a.embed(b.conductor());
    return;
  }
  int n = common_conductor(a.conductor(), b.conductor());
  a = a.embed(n);
  b = b.embed(n);
}

CycloNum CycloNum::operator-() const {
  CycloNum r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycloNum& CycloNum::operator+=(const CycloNum& rhs) {
  if (rhs.conductor_ != conductor_) {
    CycloNum b = rhs;
    unify(*this, b);
    return *this += b;
  }
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& rhs) {
  if (rhs.conductor_ != conductor_) {
    CycloNum b = rhs;
    unify(*this, b);
    return *this -= b;
  }
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  return *this;
}

CycloNum& CycloNum::operator*=(const CycloNum& rhs) {
  if (rhs.conductor_ != conductor_) {
    CycloNum b = rhs;
    unify(*this, b);
    return *this *= b;
  }
  const std::size_t n = coeffs_.size();
  if (n == 1) {
    coeffs_[0] *= rhs.coeffs_[0];
    return *this;
  }
  std::vector<Rational> prod(2 * n - 1, Rational(0));
  for (std::size_t a = 0; a < n; ++a) {
    if (coeffs_[a] == 0) continue;
    for (std::size_t b = 0; b < n; ++b)
      if (rhs.coeffs_[b] != 0) prod[a + b] += coeffs_[a] * rhs.coeffs_[b];
  }
  reduce_mod_cyclotomic(conductor_, prod);
  coeffs_ = std::move(prod);
  return *this;
}

CycloNum& CycloNum::operator/=(const CycloNum& rhs) { return *this *= rhs.inverse(); }

CycloNum CycloNum::inverse() const {
  if (is_zero()) throw Error(ErrorKind::zero_inverse, "inverse of zero");
  if (is_rational()) return rational(conductor_, 1 / coeffs_[0]);
  // x^{-1} = (prod_{sigma != 1} sigma(x)) / N(x)
  CycloNum others = rational(conductor_, 1);
  for (int j : units_mod(conductor_))
    if (j != 1) others *= galois_apply(j, *this);
  CycloNum n = *this * others;
  return others * rational(conductor_, 1 / n.coeffs_[0]);
}

Rational CycloNum::norm() const {
  CycloNum acc = rational(conductor_, 1);
  for (int j : units_mod(conductor_)) acc *= galois_apply(j, *this);
  return acc.coeffs_[0];
}

CycloNum CycloNum::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycloNum result = rational(conductor_, 1), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

bool operator==(const CycloNum& a, const CycloNum& b) {
  if (a.conductor_ == b.conductor_) return a.coeffs_ == b.coeffs_;
  CycloNum x = a, y = b;
  unify(x, y);
  return x.coeffs_ == y.coeffs_;
}

std::strong_ordering operator<=>(const CycloNum& a, const CycloNum& b) {
  if (auto c = a.conductor_ <=> b.conductor_; c != 0) return c;
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) {
    int c = cmp(a.coeffs_[k], b.coeffs_[k]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string CycloNum::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Rational& c = coeffs_[k];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << "z";
    if (k > 1) os << "^" << k;
  }
  if (first) os << "0";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const CycloNum& x) { return os << x.str(); }

CycloNum galois_apply(long j, const CycloNum& x) {
  const int n = x.conductor();
  if (std::gcd(j, static_cast<long>(n)) != 1)
    throw Error(ErrorKind::not_coprime,
                std::to_string(j) + " is not coprime to conductor " + std::to_string(n));
  const long jj = ((j % n) + n) % n;
  if (jj == 1 % n) return x;
  std::vector<Rational> c(std::max(n, 1), Rational(0));
  const auto& src = x.coeffs();
  for (std::size_t k = 0; k < src.size(); ++k)
    if (src[k] != 0) c[(k * jj) % n] += src[k];
  return CycloNum(n, std::move(c));
}

}  // namespace conicquot
