#include <sstream>

#include "conicquot/cyclofield.hpp"

namespace conicquot {

namespace {

void check_same(const std::shared_ptr<const void>& a, const std::shared_ptr<const void>& b) {
  if (a && b && a != b) throw Error(ErrorKind::field_mismatch, "elements of different Kummer extensions");
}

}  // namespace

KummerExt::Element::Element(std::shared_ptr<const Data> data, std::vector<CycloNum> coeffs)
    : data_(std::move(data)), coeffs_(std::move(coeffs)) {}

bool KummerExt::Element::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

bool KummerExt::Element::is_base() const {
  for (std::size_t j = 1; j < coeffs_.size(); ++j)
    if (!coeffs_[j].is_zero()) return false;
  return true;
}

KummerExt::Element KummerExt::Element::operator-() const {
  Element r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

KummerExt::Element& KummerExt::Element::operator+=(const Element& rhs) {
  check_same(data_, rhs.data_);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += rhs.coeffs_[j];
  return *this;
}

KummerExt::Element& KummerExt::Element::operator-=(const Element& rhs) {
  check_same(data_, rhs.data_);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= rhs.coeffs_[j];
  return *this;
}

KummerExt::Element& KummerExt::Element::operator*=(const Element& rhs) {
  check_same(data_, rhs.data_);
  const std::size_t l = coeffs_.size();
  const int n = data_->base.conductor();
  std::vector<CycloNum> out(l, CycloNum(n));
  for (std::size_t a = 0; a < l; ++a) {
    if (coeffs_[a].is_zero()) continue;
    for (std::size_t b = 0; b < l; ++b) {
      if (rhs.coeffs_[b].is_zero()) continue;
      CycloNum t = coeffs_[a] * rhs.coeffs_[b];
      if (a + b >= l) {
        out[a + b - l] += t * data_->u;
      } else {
        out[a + b] += t;
      }
    }
  }
  coeffs_ = std::move(out);
  return *this;
}

KummerExt::Element KummerExt::Element::inverse() const {
  if (is_zero()) throw Error(ErrorKind::zero_inverse, "inverse of zero in Kummer extension");
  const std::size_t l = coeffs_.size();
  const int n = data_->base.conductor();
  if (is_base()) {
    std::vector<CycloNum> c(l, CycloNum(n));
    c[0] = coeffs_[0].inverse();
    return Element(data_, std::move(c));
  }
  // columns: this * s^j
  std::vector<std::vector<CycloNum>> m(l, std::vector<CycloNum>(l + 1, CycloNum(n)));
  for (std::size_t j = 0; j < l; ++j) {
    for (std::size_t a = 0; a < l; ++a) {
      std::size_t idx = a + j;
      CycloNum v = coeffs_[a];
      if (idx >= l) {
        idx -= l;
        v *= data_->u;
      }
      m[idx][j] = v;
    }
  }
  m[0][l] = CycloNum::rational(n, 1);
  for (std::size_t col = 0; col < l; ++col) {
    std::size_t piv = col;
    while (piv < l && m[piv][col].is_zero()) ++piv;
    if (piv == l) throw Error(ErrorKind::zero_inverse, "singular multiplication matrix");
    std::swap(m[col], m[piv]);
    CycloNum inv = m[col][col].inverse();
    for (auto& v : m[col]) v *= inv;
    for (std::size_t r = 0; r < l; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      CycloNum f = m[r][col];
      for (std::size_t k = col; k <= l; ++k) m[r][k] -= f * m[col][k];
    }
  }
  std::vector<CycloNum> c(l, CycloNum(n));
  for (std::size_t j = 0; j < l; ++j) c[j] = m[j][l];
  return Element(data_, std::move(c));
}

std::string KummerExt::Element::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << coeffs_[j].str() << ")";
    if (j == 1) os << "*s";
    if (j > 1) os << "*s^" << j;
  }
  if (first) os << "0";
  return os.str();
}

KummerExt::KummerExt(const FieldSpec& base, const CycloNum& u, int l) {
  if (l < 1) throw Error(ErrorKind::out_of_range, "Kummer exponent must be positive");
  const CycloNum uu = base.lift(u);
  if (!base.contains(uu)) throw Error(ErrorKind::field_mismatch, "radicand is not in the base field");
  if (uu.is_zero()) throw Error(ErrorKind::not_irreducible, "radicand is zero");
  auto xi_inv = CycloNum::root_of_unity_in(base.conductor(), l, -1);
  if (!xi_inv || !base.contains(*xi_inv))
    throw Error(ErrorKind::missing_root_of_unity, "xi_" + std::to_string(l) + " is not in the base field");
  int rest = l;
  for (int p = 2; rest > 1; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    if (auto w = root_in_field(base, uu, p))
      throw Error(ErrorKind::not_irreducible,
                  "radicand is a " + std::to_string(p) + "-th power: (" + w->str() + ")^" + std::to_string(p));
  }
  if (l % 4 == 0) {
    CycloNum w = -uu / base.from_rational(4);
    if (auto v = root_in_field(base, w, 4))
      throw Error(ErrorKind::not_irreducible, "radicand equals -4*(" + v->str() + ")^4");
  }
  data_ = std::make_shared<const Data>(Data{base, uu, l, *xi_inv});
}

KummerExt::Element KummerExt::constant(const CycloNum& c) const {
  std::vector<CycloNum> v(data_->l, CycloNum(conductor()));
  v[0] = data_->base.lift(c);
  return Element(data_, std::move(v));
}

KummerExt::Element KummerExt::constant(const Rational& c) const { return constant(data_->base.from_rational(c)); }

KummerExt::Element KummerExt::generator_power(int j) const {
  const int l = data_->l;
  int q = j >= 0 ? j / l : -((-j + l - 1) / l);
  int r = j - q * l;
  std::vector<CycloNum> v(l, CycloNum(conductor()));
  v[r] = data_->u.pow(q);
  return Element(data_, std::move(v));
}

KummerExt::Element KummerExt::from_coeffs(std::vector<CycloNum> coeffs) const {
  if (coeffs.size() > static_cast<std::size_t>(data_->l))
    throw Error(ErrorKind::out_of_range, "too many Kummer coefficients");
  coeffs.resize(data_->l, CycloNum(conductor()));
  for (auto& c : coeffs) c = data_->base.lift(c);
  return Element(data_, std::move(coeffs));
}

KummerExt::Element KummerExt::galois(int j, const Element& x) const {
  Element r = x;
  CycloNum step = data_->xi_l_inv.pow(j);
  CycloNum f = CycloNum::rational(conductor(), 1);
  for (auto& c : r.coeffs_) {
    c *= f;
    f *= step;
  }
  return r;
}

KummerExt kummer_make(const FieldSpec& k, const CycloNum& u, int l) { return KummerExt(k, u, l); }

KummerExt::Element kummer_galois(const KummerExt& e, int j, const KummerExt::Element& x) { return e.galois(j, x); }

}  // namespace conicquot
