#include "qwalk/transport.hpp"

#include <stdexcept>
#include <string>

#include "qwalk/exact.hpp"

namespace qwalk {

Projector projector(const std::vector<TrappedState>& basis, int dim) {
  Projector p;
  p.matrix = RationalMatrix::Zero(dim, dim);
  p.rank = static_cast<int>(basis.size());
  if (basis.empty()) return p;

  RationalMatrix b = RationalMatrix::Zero(dim, p.rank);
  for (int j = 0; j < p.rank; ++j) {
    if (basis[j].amplitudes.size() != dim)
      throw std::invalid_argument("projector: state dimension mismatch");
    b.col(j) = basis[j].amplitudes;
  }

  RationalMatrix gram = b.transpose() * b;
  auto inv = exact::inverse(gram);
  if (!inv) {
    // Name the first state that does not extend the span.
    for (int j = 1; j <= p.rank; ++j)
      if (exact::rank<Rational>(b.leftCols(j)) < j)
        throw std::invalid_argument("projector: basis state " + std::to_string(j - 1) +
                                    " is linearly dependent on its predecessors");
    throw std::invalid_argument("projector: dependent basis");
  }
  p.matrix = b * (*inv) * b.transpose();
  return p;
}

InitialState InitialState::pure(RationalVector real_part, RationalVector imag_part) {
  InitialState s;
  s.kind = Kind::Pure;
  s.re = std::move(real_part);
  if (imag_part.size() == 0) imag_part = RationalVector::Zero(s.re.size());
  s.im = std::move(imag_part);
  if (s.re.size() != s.im.size())
    throw std::invalid_argument("pure state: real/imaginary size mismatch");
  return s;
}

InitialState InitialState::maximally_mixed(std::vector<DirEdgeId> edges) {
  if (edges.empty()) throw std::invalid_argument("maximally mixed state: empty subspace");
  InitialState s;
  s.kind = Kind::MaximallyMixed;
  s.subspace = std::move(edges);
  return s;
}

Rational atp(const Projector& p, const InitialState& rho0) {
  if (rho0.kind == InitialState::Kind::MaximallyMixed) return average_atp(p, rho0.subspace);
  // For a symmetric real P, <psi|P|psi> = re^T P re + im^T P im.
  Rational num = rho0.re.dot(p.matrix * rho0.re) + rho0.im.dot(p.matrix * rho0.im);
  Rational den = rho0.re.dot(rho0.re) + rho0.im.dot(rho0.im);
  if (den.is_zero()) throw std::invalid_argument("atp: zero pure state");
  return Rational(1) - num / den;
}

Rational average_atp(const Projector& p, const std::vector<DirEdgeId>& subspace) {
  if (subspace.empty()) throw std::invalid_argument("average_atp: empty subspace");
  Rational trace = 0;
  for (DirEdgeId e : subspace) trace += p.matrix(e, e);
  return Rational(1) - trace / Rational(static_cast<long long>(subspace.size()));
}

Rational closed_form(Family family, const FamilyParams& p) {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("closed_form: ") + what);
  };
  const Rational one = 1;
  switch (family) {
    case Family::MultiLoop:
      need(p.n >= 2, "multi_loop requires n >= 2");
      return Rational(2, p.n);
    case Family::StarSingle:
      need(p.n >= 3 && p.L >= 0, "star_single requires n >= 3, L >= 0");
      return one - Rational(1, 2 * p.L + 1) * (one - Rational(1, p.n - 1));
    case Family::StarFull:
      need(p.n >= 3 && p.L >= 0, "star_full requires n >= 3, L >= 0");
      return one - Rational(1, 2 * p.L + 1) * (one - Rational(2, p.n));
    case Family::MinimalA:
      need(p.L >= 0, "minimal_a requires L >= 0");
      return one - Rational(1, 8 + 4 * p.L);
    case Family::MinimalB:
      need(p.L >= 0, "minimal_b requires L >= 0");
      return one - Rational(1, 12 + 8 * p.L);
    case Family::MinimalC:
      need(p.L >= 0, "minimal_c requires L >= 0");
      return one - Rational(1, 2 + 2 * p.L);
    case Family::MinimalD:
      need(p.L >= 0, "minimal_d requires L >= 0");
      return one - Rational(1, 10 + 8 * p.L);
    case Family::HollowPrismTri:
      need(p.H >= 2, "hollow_prism_tri requires H >= 2");
      return one - Rational(1, 6) * (Rational(1, p.H + 1) + Rational(1, p.H + 2));
  }
  throw std::invalid_argument("closed_form: unknown family");
}

}  // namespace qwalk
