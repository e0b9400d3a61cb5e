#include "conicquot/birational_compare.hpp"

#include <algorithm>
#include <future>

namespace conicquot {

namespace {

bool contains_sorted(const std::vector<P1Point>& v, const P1Point& p) { return std::binary_search(v.begin(), v.end(), p); }

P1Point galois_point(long j, const P1Point& p) { return P1Point(galois_apply(j, p.t1()), galois_apply(j, p.t0())); }

// x v1 + y v2 = v3; columns x v1, y v2
Pgl2Elem frame(const P1Point& v1, const P1Point& v2, const P1Point& v3) {
  const CycloNum det = v1.t1() * v2.t0() - v1.t0() * v2.t1();
  const CycloNum x = (v3.t1() * v2.t0() - v3.t0() * v2.t1()) / det;
  const CycloNum y = (v1.t1() * v3.t0() - v1.t0() * v3.t1()) / det;
  return Pgl2Elem(x * v1.t1(), y * v2.t1(), x * v1.t0(), y * v2.t0());
}

}  // namespace

FibreLocus::FibreLocus(std::vector<P1Point> points, FieldSpec field) : field_(std::move(field)) {
  for (auto& p : points) p = p.embed(field_.conductor());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  points_ = std::move(points);
  for (int j : field_.stabilizer())
    for (const auto& p : points_)
      if (!contains_sorted(points_, galois_point(j, p)))
        throw Error(ErrorKind::invalid_model, "locus is not Galois-stable: conjugate of " + p.str() + " missing");
}

Pgl2Elem mobius_from_triples(const P1Point& a1, const P1Point& a2, const P1Point& a3, const P1Point& b1,
                             const P1Point& b2, const P1Point& b3) {
  int n = 1;
  for (const auto* p : {&a1, &a2, &a3, &b1, &b2, &b3}) n = common_conductor(n, p->conductor());
  const P1Point x1 = a1.embed(n), x2 = a2.embed(n), x3 = a3.embed(n);
  const P1Point y1 = b1.embed(n), y2 = b2.embed(n), y3 = b3.embed(n);
  if (x1 == x2 || x1 == x3 || x2 == x3) throw Error(ErrorKind::degenerate_triple, "source points repeat");
  if (y1 == y2 || y1 == y3 || y2 == y3) throw Error(ErrorKind::degenerate_triple, "target points repeat");
  return frame(y1, y2, y3) * frame(x1, x2, x3).inverse();
}

std::optional<Pgl2Elem> loci_equivalent(const FibreLocus& a, const FibreLocus& b) {
  if (!(a.field() == b.field())) throw Error(ErrorKind::field_mismatch, "loci over different fields");
  if (a.size() != b.size()) return std::nullopt;
  if (a.size() < 3) throw Error(ErrorKind::out_of_range, "need at least three points");
  const auto& pa = a.points();
  const auto& pb = b.points();
  const std::size_t n = pb.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t l = 0; l < n; ++l) {
        if (l == i || l == j) continue;
        Pgl2Elem phi = mobius_from_triples(pa[0], pa[1], pa[2], pb[i], pb[j], pb[l]);
        if (!phi.defined_over(a.field())) continue;
        const bool ok = std::all_of(pa.begin() + 3, pa.end(), [&](const P1Point& p) {
          return contains_sorted(pb, phi.apply(p));
        });
        if (ok) return phi;
      }
    }
  return std::nullopt;
}

FibreLocus quotient_locus(const SurfaceModel& m) {
  if (!m.payload) throw Error(ErrorKind::invalid_model, "model has no equation payload");
  return FibreLocus(m.payload->quotient_points, m.field);
}

FibreLocus quotient_locus(const SurfaceModel& m, const FiniteGroup& group, const Rational& shift) {
  FibreLocus base = base_locus(m, group);
  std::vector<P1Point> pts;
  for (const auto& p : base.points()) pts.push_back(quotient_image(group, p, shift));
  return FibreLocus(std::move(pts), m.field.embed(base.field().conductor()));
}

FibreLocus base_locus(const SurfaceModel& m, const FiniteGroup& group) {
  if (!m.payload) throw Error(ErrorKind::invalid_model, "model has no equation payload");
  const EquationPayload& p = *m.payload;
  const int n = common_conductor(m.field.conductor(), group.conductor());
  auto s = nth_root(p.u.embed(n), p.l);
  if (!s) throw Error(ErrorKind::needs_larger_field, "u^(1/l) is not in the ambient cyclotomic field");
  std::vector<P1Point> pts;
  for (const auto& mu : p.mus) {
    const P1Point start = P1Point::affine(mu.embed(n) * *s);
    for (const auto& h : group.elements()) pts.push_back(h.embed(n).apply(start));
  }
  return FibreLocus(std::move(pts), m.field.embed(n));
}

std::string to_string(Equivalence e) {
  switch (e) {
    case Equivalence::equivalent: return "Equivalent";
    case Equivalence::inequivalent: return "Inequivalent";
    case Equivalence::no_conclusion: return "NoConclusion";
  }
  return "?";
}

std::vector<std::vector<PairVerdict>> pairwise_inequivalence(const std::vector<SurfaceModel>& family, int jobs) {
  const std::size_t n = family.size();
  std::vector<FibreLocus> loci;
  for (const auto& m : family) {
    if (!(m.field == family.front().field) || !(m.group == family.front().group))
      throw Error(ErrorKind::field_mismatch, "family members must share field and group");
    loci.push_back(quotient_locus(m));
  }
  std::vector<std::vector<PairVerdict>> out(n, std::vector<PairVerdict>(n));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    out[i][i] = {Equivalence::equivalent, Pgl2Elem::identity(loci[i].field().conductor())};
    for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({i, j});
  }
  auto work = [&](std::size_t lo, std::size_t step) {
    for (std::size_t t = lo; t < pairs.size(); t += step) {
      const auto [i, j] = pairs[t];
      PairVerdict v;
      if (auto phi = loci_equivalent(loci[i], loci[j])) {
        v = {Equivalence::equivalent, phi};
      } else {
        v.verdict = loci[i].rigid() && loci[j].rigid() ? Equivalence::inequivalent : Equivalence::no_conclusion;
      }
      out[i][j] = v;
      if (v.witness) {
        out[j][i] = {v.verdict, v.witness->inverse()};
      } else {
        out[j][i] = v;
      }
    }
  };
  const std::size_t nj = static_cast<std::size_t>(std::max(1, jobs));
  std::vector<std::future<void>> fs;
  for (std::size_t j = 0; j < nj; ++j) fs.push_back(std::async(std::launch::async, work, j, nj));
  for (auto& f : fs) f.get();
  return out;
}

}  // namespace conicquot
