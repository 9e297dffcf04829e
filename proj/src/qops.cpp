// Copyright 2026 The geomdd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "geomdd/qops.hpp"

#include <algorithm>
#include <sstream>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "geomdd/errors.hpp"

namespace geomdd::qops {

const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

HilbertSpace::HilbertSpace(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw DimensionError("HilbertSpace needs at least one subsystem");
  long long total = 1;
  for (int d : dims_) {
    if (d < 1) throw DimensionError("subsystem dimension must be >= 1, got " + std::to_string(d));
    total *= d;
    if (total > kMaxDimension)
      throw DimensionError("total dimension exceeds dense limit " + std::to_string(kMaxDimension));
  }
  total_ = static_cast<int>(total);
}

HilbertSpace HilbertSpace::concat(const HilbertSpace& other) const {
  std::vector<int> d = dims_;
  d.insert(d.end(), other.dims_.begin(), other.dims_.end());
  return HilbertSpace(std::move(d));
}

HilbertSpace HilbertSpace::restrict_to(const std::vector<int>& keep) const {
  std::vector<int> d;
  d.reserve(keep.size());
  for (int k : keep) d.push_back(dims_.at(static_cast<std::size_t>(k)));
  return HilbertSpace(std::move(d));
}

std::string HilbertSpace::describe() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < dims_.size(); ++i) os << (i ? "x" : "") << dims_[i];
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------

ComplexOperator::ComplexOperator(HilbertSpace space, Mat entries)
    : space_(std::move(space)), m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) throw DimensionError("operator must be square");
  if (m_.rows() != space_.total())
    throw DimensionError("operator size " + std::to_string(m_.rows()) + " does not match space " +
                         space_.describe());
}

ComplexOperator ComplexOperator::identity(const HilbertSpace& space) {
  return ComplexOperator(space, Mat::Identity(space.total(), space.total()));
}

ComplexOperator ComplexOperator::zero(const HilbertSpace& space) {
  return ComplexOperator(space, Mat::Zero(space.total(), space.total()));
}

bool ComplexOperator::is_hermitian(double tol) const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool ComplexOperator::is_unitary(double tol) const {
  return (m_.adjoint() * m_ - Mat::Identity(dim(), dim())).cwiseAbs().maxCoeff() <= tol;
}

ComplexOperator ComplexOperator::adjoint() const { return ComplexOperator(space_, m_.adjoint()); }

namespace {
void require_same(const HilbertSpace& a, const HilbertSpace& b, const char* what) {
  if (a != b)
    throw DimensionError(std::string(what) + ": space mismatch " + a.describe() + " vs " +
                         b.describe());
}
}  // namespace

ComplexOperator ComplexOperator::operator+(const ComplexOperator& o) const {
  require_same(space_, o.space_, "operator +");
  return ComplexOperator(space_, m_ + o.m_);
}

ComplexOperator ComplexOperator::operator-(const ComplexOperator& o) const {
  require_same(space_, o.space_, "operator -");
  return ComplexOperator(space_, m_ - o.m_);
}

ComplexOperator ComplexOperator::operator*(const ComplexOperator& o) const {
  require_same(space_, o.space_, "operator *");
  return ComplexOperator(space_, m_ * o.m_);
}

ComplexOperator ComplexOperator::operator*(cplx s) const { return ComplexOperator(space_, m_ * s); }

// ---------------------------------------------------------------------------

StateVector::StateVector(HilbertSpace space, Vec amplitudes)
    : space_(std::move(space)), v_(std::move(amplitudes)) {}

StateVector StateVector::normalize(HilbertSpace space, Vec amplitudes) {
  if (amplitudes.size() != space.total())
    throw DimensionError("state size does not match space " + space.describe());
  if (!amplitudes.allFinite()) throw NumericalError("state has non-finite amplitudes");
  const double n = amplitudes.norm();
  if (n == 0.0) throw ValidationError("cannot normalize the zero vector");
  return StateVector(std::move(space), amplitudes / n);
}

StateVector StateVector::basis(const HilbertSpace& space, int index) {
  if (index < 0 || index >= space.total())
    throw DimensionError("basis index " + std::to_string(index) + " out of range");
  Vec v = Vec::Zero(space.total());
  v(index) = 1.0;
  return StateVector(space, std::move(v));
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(HilbertSpace space, Mat entries, NoCheck)
    : space_(std::move(space)), m_(std::move(entries)) {
  if (m_.rows() != m_.cols() || m_.rows() != space_.total())
    throw DimensionError("density matrix size does not match space " + space_.describe());
}

DensityMatrix::DensityMatrix(HilbertSpace space, Mat entries, const Tolerances& tol)
    : DensityMatrix(std::move(space), std::move(entries), NoCheck{}) {
  if (!m_.allFinite()) throw NumericalError("density matrix has non-finite entries");
  const DensityCheck c = check();
  if (c.hermiticity_error > tol.hermiticity)
    throw ValidationError("density matrix is not Hermitian");
  if (c.trace_error > tol.trace) throw ValidationError("density matrix trace is not 1");
  if (c.min_eigenvalue < tol.min_eigenvalue)
    throw ValidationError("density matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::unchecked(HilbertSpace space, Mat entries) {
  return DensityMatrix(std::move(space), std::move(entries), NoCheck{});
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  const Vec& v = psi.amplitudes();
  return DensityMatrix(psi.space(), v * v.adjoint(), NoCheck{});
}

DensityCheck DensityMatrix::check() const {
  DensityCheck c;
  c.hermiticity_error = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  c.trace_error = std::abs(m_.trace() - cplx(1.0, 0.0));
  const Mat herm = 0.5 * (m_ + m_.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(herm, Eigen::EigenvaluesOnly);
  c.min_eigenvalue = es.eigenvalues().minCoeff();
  return c;
}

// ---------------------------------------------------------------------------

Mat kron(const Mat& a, const Mat& b) {
  const long long n = static_cast<long long>(a.rows()) * b.rows();
  if (n > kMaxDimension) throw DimensionError("tensor product exceeds dense limit");
  return Eigen::kroneckerProduct(a, b).eval();
}

ComplexOperator tensor(const ComplexOperator& a, const ComplexOperator& b) {
  return ComplexOperator(a.space().concat(b.space()), kron(a.matrix(), b.matrix()));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  HilbertSpace s = a.space().concat(b.space());
  Vec v = Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes()).eval();
  return StateVector::normalize(std::move(s), std::move(v));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::unchecked(a.space().concat(b.space()), kron(a.matrix(), b.matrix()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<int> keep) {
  const auto& dims = rho.space().dims();
  const int n = static_cast<int>(dims.size());
  if (keep.empty()) throw ValidationError("partial_trace: keep set is empty");
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end())
    throw ValidationError("partial_trace: duplicate index in keep set");
  for (int k : keep)
    if (k < 0 || k >= n) throw DimensionError("partial_trace: subsystem index out of range");

  std::vector<int> strides(n);
  int s = 1;
  for (int i = n - 1; i >= 0; --i) {
    strides[i] = s;
    s *= dims[i];
  }
  std::vector<bool> kept(n, false);
  for (int k : keep) kept[k] = true;

  // Flat offsets of every multi-index over a subset of subsystems.
  auto offsets = [&](bool want_kept) {
    std::vector<int> out{0};
    for (int i = 0; i < n; ++i) {
      if (kept[i] != want_kept) continue;
      std::vector<int> next;
      next.reserve(out.size() * dims[i]);
      for (int base : out)
        for (int j = 0; j < dims[i]; ++j) next.push_back(base + j * strides[i]);
      out = std::move(next);
    }
    return out;
  };
  const std::vector<int> ko = offsets(true);
  const std::vector<int> to = offsets(false);

  const Mat& m = rho.matrix();
  const int dk = static_cast<int>(ko.size());
  Mat out = Mat::Zero(dk, dk);
  for (int r = 0; r < dk; ++r)
    for (int c = 0; c < dk; ++c) {
      cplx acc = 0.0;
      for (int t : to) acc += m(ko[r] + t, ko[c] + t);
      out(r, c) = acc;
    }
  return DensityMatrix::unchecked(rho.space().restrict_to(keep), std::move(out));
}

Mat expm(const Mat& a) {
  if (a.rows() != a.cols()) throw DimensionError("expm needs a square matrix");
  if (!a.allFinite()) throw NumericalError("expm: non-finite entries");
  Mat r = a.exp();
  if (!r.allFinite()) throw NumericalError("expm: result is not finite");
  return r;
}

ComplexOperator expm(const ComplexOperator& a) { return ComplexOperator(a.space(), expm(a.matrix())); }

double state_fidelity(const StateVector& ideal, const DensityMatrix& rho, const Tolerances& tol) {
  if (ideal.space() != rho.space())
    throw DimensionError("state_fidelity: space mismatch " + ideal.space().describe() + " vs " +
                         rho.space().describe());
  const Vec& v = ideal.amplitudes();
  const cplx f = v.dot(rho.matrix() * v);  // dot conjugates the left argument
  if (std::abs(f.imag()) > tol.fidelity_imag)
    throw NumericalError("state_fidelity: imaginary residue " + std::to_string(f.imag()));
  return f.real();
}

double operator_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues()(0);
}

double phase_aligned_distance(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("phase_aligned_distance: shape mismatch");
  Eigen::Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  cplx phase = 1.0;
  if (std::abs(a(r, c)) > 0.0 && std::abs(b(r, c)) > 0.0) {
    phase = a(r, c) / b(r, c);
    phase /= std::abs(phase);
  }
  return operator_norm(a - phase * b);
}

Mat pauli_x() {
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

Mat pauli_y() {
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = -kI;
  m(1, 0) = kI;
  return m;
}

Mat pauli_z() {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

Mat eye(int n) { return Mat::Identity(n, n); }

Mat destroy(int levels) {
  Mat a = Mat::Zero(levels, levels);
  for (int n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Mat outer(int n, int row, int col) {
  Mat m = Mat::Zero(n, n);
  m(row, col) = 1.0;
  return m;
}

}  // namespace geomdd::qops
