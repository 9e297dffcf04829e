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

// Dense operators, states and density matrices over tensor-product spaces.
//
// Subsystem 0 is the slowest-varying index, so |a>|b> with dims {da, db}
// sits at flat index a * db + b. Single-qubit bases are ordered |0>, |1>
// with sigma_z = diag(1, -1).

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace geomdd::qops {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

// Numerical tolerances shared by validators across the library.
struct Tolerances {
  double state_norm = 1e-10;
  double hermiticity = 1e-10;
  double trace = 1e-10;
  double min_eigenvalue = -1e-8;
  double fidelity_imag = 1e-10;
};

const Tolerances& default_tolerances();

// Largest total dimension accepted for dense storage.
inline constexpr long long kMaxDimension = 1LL << 14;

class HilbertSpace {
 public:
  // Dims are subsystem sizes; 1 is allowed so that a phonon mode can be
  // truncated to its vacuum.
  explicit HilbertSpace(std::vector<int> dims);

  const std::vector<int>& dims() const { return dims_; }
  int total() const { return total_; }
  std::size_t subsystems() const { return dims_.size(); }

  HilbertSpace concat(const HilbertSpace& other) const;
  HilbertSpace restrict_to(const std::vector<int>& keep) const;

  bool operator==(const HilbertSpace& other) const { return dims_ == other.dims_; }
  bool operator!=(const HilbertSpace& other) const { return !(*this == other); }

  std::string describe() const;

 private:
  std::vector<int> dims_;
  int total_ = 1;
};

class ComplexOperator {
 public:
  ComplexOperator(HilbertSpace space, Mat entries);

  static ComplexOperator identity(const HilbertSpace& space);
  static ComplexOperator zero(const HilbertSpace& space);

  const HilbertSpace& space() const { return space_; }
  const Mat& matrix() const { return m_; }
  int dim() const { return space_.total(); }

  bool is_hermitian(double tol = default_tolerances().hermiticity) const;
  bool is_unitary(double tol = 1e-10) const;
  ComplexOperator adjoint() const;

  ComplexOperator operator+(const ComplexOperator& o) const;
  ComplexOperator operator-(const ComplexOperator& o) const;
  ComplexOperator operator*(const ComplexOperator& o) const;
  ComplexOperator operator*(cplx s) const;

 private:
  HilbertSpace space_;
  Mat m_;
};

class StateVector {
 public:
  // Rescales to unit norm; a zero vector is rejected.
  static StateVector normalize(HilbertSpace space, Vec amplitudes);
  static StateVector basis(const HilbertSpace& space, int index);

  const HilbertSpace& space() const { return space_; }
  const Vec& amplitudes() const { return v_; }

 private:
  StateVector(HilbertSpace space, Vec amplitudes);

  HilbertSpace space_;
  Vec v_;
};

struct DensityCheck {
  double hermiticity_error = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
};

class DensityMatrix {
 public:
  // Validated construction: Hermitian, unit trace, positive semidefinite.
  DensityMatrix(HilbertSpace space, Mat entries,
                const Tolerances& tol = default_tolerances());

  // Skips validation. Used by propagators, which track drift separately.
  static DensityMatrix unchecked(HilbertSpace space, Mat entries);
  static DensityMatrix pure(const StateVector& psi);

  const HilbertSpace& space() const { return space_; }
  const Mat& matrix() const { return m_; }

  DensityCheck check() const;

 private:
  struct NoCheck {};
  DensityMatrix(HilbertSpace space, Mat entries, NoCheck);

  HilbertSpace space_;
  Mat m_;
};

ComplexOperator tensor(const ComplexOperator& a, const ComplexOperator& b);
StateVector tensor(const StateVector& a, const StateVector& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

// Traces out every subsystem not listed in keep. Kept subsystems retain
// their original relative order.
DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<int> keep);

Mat expm(const Mat& a);
ComplexOperator expm(const ComplexOperator& a);

double state_fidelity(const StateVector& ideal, const DensityMatrix& rho,
                      const Tolerances& tol = default_tolerances());

// Largest singular value.
double operator_norm(const Mat& a);

// ||a - e^{i chi} b|| with chi chosen on the largest-magnitude entry of b.
double phase_aligned_distance(const Mat& a, const Mat& b);

Mat kron(const Mat& a, const Mat& b);

Mat pauli_x();
Mat pauli_y();
Mat pauli_z();
Mat eye(int n);
// Bosonic annihilation operator truncated to levels 0..levels-1.
Mat destroy(int levels);
// |row><col| in dimension n.
Mat outer(int n, int row, int col);

}  // namespace geomdd::qops
