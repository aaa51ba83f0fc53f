#include "sckey/frames.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace sckey {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kIdentityTol = 1e-9;  // resolution-of-identity gate

void check_unit_norm(const CVector& v, const char* what) {
  if (std::abs(v.norm() - 1.0) > kNormTol)
    throw std::invalid_argument(std::string(what) + ": vector is not unit norm");
}

void require_identity_resolution(const Frame& frame, const char* op) {
  if (identity_resolution_residual(frame) > kIdentityTol)
    throw std::invalid_argument(std::string(op) +
                                ": frame does not resolve the identity (V_1 > n^2/d)");
}

}  // namespace

StateVector::StateVector(CVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() < 1) throw std::invalid_argument("StateVector: empty amplitude vector");
  check_unit_norm(amps_, "StateVector");
}

Frame::Frame(CMatrix columns, std::string label)
    : cols_(std::move(columns)), label_(std::move(label)) {
  if (cols_.rows() < 1 || cols_.cols() < 1)
    throw std::invalid_argument("Frame: need at least one state of dimension >= 1");
  for (Index k = 0; k < cols_.cols(); ++k)
    check_unit_norm(cols_.col(k), "Frame");
}

Frame::Frame(Index dim, const std::vector<StateVector>& states, std::string label)
    : Frame([&] {
        CMatrix m(dim, static_cast<Index>(states.size()));
        for (Index k = 0; k < m.cols(); ++k) {
          const auto& s = states[static_cast<std::size_t>(k)];
          if (s.dim() != dim)
            throw std::invalid_argument("Frame: state dimension mismatch");
          m.col(k) = s.amplitudes();
        }
        return m;
      }(), std::move(label)) {}

GramMatrix::GramMatrix(CMatrix entries) : g_(std::move(entries)) {
  if (g_.rows() != g_.cols()) throw std::invalid_argument("GramMatrix: not square");
  if ((g_ - g_.adjoint()).cwiseAbs().maxCoeff() > kNormTol)
    throw std::invalid_argument("GramMatrix: not Hermitian");
  if ((g_.diagonal().array() - 1.0).abs().maxCoeff() > kNormTol)
    throw std::invalid_argument("GramMatrix: diagonal is not 1");
}

RVector GramMatrix::eigenvalues() const {
  return Eigen::SelfAdjointEigenSolver<CMatrix>(g_, Eigen::EigenvaluesOnly).eigenvalues();
}

Povm::Povm(Index dim, std::vector<CMatrix> elements)
    : dim_(dim), elements_(std::move(elements)) {
  if (elements_.empty()) throw std::invalid_argument("Povm: no elements");
  CMatrix sum = CMatrix::Zero(dim_, dim_);
  for (const auto& e : elements_) {
    if (e.rows() != dim_ || e.cols() != dim_)
      throw std::invalid_argument("Povm: element dimension mismatch");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(e, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-12)
      throw std::invalid_argument("Povm: element is not positive semidefinite");
    sum += e;
  }
  sum -= CMatrix::Identity(dim_, dim_);
  if (sum.cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("Povm: elements do not sum to the identity");
}

double Povm::outcome_probability(Index k, const CVector& state) const {
  if (state.size() != dim_) throw std::invalid_argument("Povm: state dimension mismatch");
  return std::real(Complex(state.dot(element(k) * state)));
}

BipartiteState::BipartiteState(Index dim_a, Index dim_b, CVector amplitudes)
    : da_(dim_a), db_(dim_b), amps_(std::move(amplitudes)) {
  if (da_ < 1 || db_ < 1 || amps_.size() != da_ * db_)
    throw std::invalid_argument("BipartiteState: dimension mismatch");
  check_unit_norm(amps_, "BipartiteState");
}

CMatrix BipartiteState::reduced_a() const {
  // amplitudes in lexicographic (a,b) order: row-major da x db matrix
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      m(amps_.data(), da_, db_);
  return m * m.adjoint();
}

CMatrix BipartiteState::reduced_b() const {
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      m(amps_.data(), da_, db_);
  return m.transpose() * m.conjugate();
}

Frame make_trine() {
  using std::numbers::pi;
  CMatrix cols(2, 3);
  const double r = 1.0 / std::sqrt(2.0);
  for (Index j = 0; j < 3; ++j) {
    const Complex w = std::polar(1.0, 2.0 * pi * static_cast<double>(j) / 3.0);
    cols(0, j) = r * w;
    cols(1, j) = r * w * w;
  }
  return Frame(std::move(cols), "trine");
}

Frame make_bb84() {
  CMatrix cols(2, 4);
  const double r = 1.0 / std::sqrt(2.0);
  cols.col(0) << 1.0, 0.0;
  cols.col(1) << 0.0, 1.0;
  cols.col(2) << r, r;
  cols.col(3) << r, -r;
  return Frame(std::move(cols), "bb84");
}

Frame dual_frame(const Frame& frame) {
  if (frame.dim() != 2)
    throw std::invalid_argument(
        "dual_frame: defined for qubits only (the orthogonal complement of a "
        "state is not pure in higher dimensions)");
  CMatrix cols(2, frame.size());
  for (Index k = 0; k < frame.size(); ++k) {
    const Complex a = frame.columns()(0, k);
    const Complex b = frame.columns()(1, k);
    CVector t(2);
    t << -std::conj(b), std::conj(a);
    // first nonzero amplitude real and positive
    const Complex lead = std::abs(t(0)) > kNormTol ? t(0) : t(1);
    t *= std::conj(lead) / std::abs(lead);
    cols.col(k) = t;
  }
  return Frame(std::move(cols), "dual-" + frame.label());
}

Frame make_simplex(int d) {
  if (d < 2) throw std::invalid_argument("make_simplex: need d >= 2");
  const Index n = d + 1;
  // centered standard basis of R^{d+1}; every column has norm sqrt(d/(d+1))
  RMatrix centered = RMatrix::Identity(n, n) - RMatrix::Constant(n, n, 1.0 / static_cast<double>(n));
  // orthonormal basis of the d-dimensional span from the first d columns
  Eigen::HouseholderQR<RMatrix> qr(centered.leftCols(d));
  RMatrix basis = qr.householderQ() * RMatrix::Identity(n, d);
  RMatrix coords = basis.transpose() * centered;  // d x (d+1)
  coords.colwise().normalize();
  return Frame(coords.cast<Complex>(), "simplex:" + std::to_string(d));
}

GramMatrix gram(const Frame& frame) {
  return GramMatrix(frame.columns().adjoint() * frame.columns());
}

double identity_resolution_residual(const Frame& frame) {
  const double ratio = static_cast<double>(frame.size()) / static_cast<double>(frame.dim());
  CMatrix s = frame.columns() * frame.columns().adjoint();
  s -= ratio * CMatrix::Identity(frame.dim(), frame.dim());
  return s.cwiseAbs().maxCoeff();
}

double frame_potential(const Frame& frame, int t) {
  if (t < 1) throw std::invalid_argument("frame_potential: need t >= 1");
  CMatrix g = frame.columns().adjoint() * frame.columns();
  return g.array().abs2().pow(t).sum();
}

EquiangularCheck is_equiangular(const Frame& frame, double tol) {
  const Index n = frame.size();
  if (n < 2) throw std::invalid_argument("is_equiangular: need at least two states");
  if (tol <= 0.0) throw std::invalid_argument("is_equiangular: tol must be positive");
  CMatrix g = frame.columns().adjoint() * frame.columns();
  double sum = 0.0, lo = 1.0, hi = 0.0;
  for (Index j = 0; j < n; ++j)
    for (Index k = 0; k < n; ++k) {
      if (j == k) continue;
      const double o = std::norm(g(j, k));
      sum += o;
      lo = std::min(lo, o);
      hi = std::max(hi, o);
    }
  const double mean = sum / static_cast<double>(n * (n - 1));
  const double welch = static_cast<double>(n - frame.dim()) /
                       static_cast<double>(frame.dim() * (n - 1));
  const bool flag = (hi - lo) <= tol && std::abs(mean - welch) <= tol;
  return {flag, mean};
}

Povm povm_from_frame(const Frame& frame) {
  require_identity_resolution(frame, "povm_from_frame");
  const double w = static_cast<double>(frame.dim()) / static_cast<double>(frame.size());
  std::vector<CMatrix> elements;
  elements.reserve(static_cast<std::size_t>(frame.size()));
  for (Index k = 0; k < frame.size(); ++k)
    elements.push_back(w * frame.columns().col(k) * frame.columns().col(k).adjoint());
  return Povm(frame.dim(), std::move(elements));
}

double classical_fidelity(const Frame& frame) {
  require_identity_resolution(frame, "classical_fidelity");
  const double n = static_cast<double>(frame.size());
  return static_cast<double>(frame.dim()) * frame_potential(frame, 2) / (n * n);
}

BipartiteState entangled_realization(const Frame& frame) {
  require_identity_resolution(frame, "entangled_realization");
  const Index d = frame.dim();
  const double scale = std::sqrt(static_cast<double>(d)) / static_cast<double>(frame.size());
  CVector amps = CVector::Zero(d * d);
  for (Index k = 0; k < frame.size(); ++k)
    amps += kron(frame.columns().col(k), frame.columns().col(k).conjugate());
  return BipartiteState(d, d, scale * amps);
}

}  // namespace sckey
