// Copyright 2026 The abelcss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ABELCSS_HILBERT_H
#define ABELCSS_HILBERT_H

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "abelcss/group.h"
#include "abelcss/rng.h"

namespace abelcss {

/// Default cap on the number of amplitudes in a dense state.
inline constexpr std::uint64_t kDefaultDimensionCap = std::uint64_t{1} << 16;
/// Default cap on the dimension of a dense square operator.
inline constexpr std::uint64_t kDefaultOperatorCap = std::uint64_t{1} << 11;

/// A branch that should carry probability turned out (numerically) empty.
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/// Dense amplitude vector over the standard basis {|x> : x in G}, indexed like G.
class StateVector {
   public:
    /// All-zero vector.
    explicit StateVector(GroupSpec group, std::uint64_t cap = kDefaultDimensionCap);
    StateVector(GroupSpec group, std::vector<Complex> amplitudes, std::uint64_t cap = kDefaultDimensionCap);

    const GroupSpec &group() const { return group_; }
    std::size_t dimension() const { return amps_.size(); }
    const std::vector<Complex> &amplitudes() const { return amps_; }
    std::vector<Complex> &amplitudes() { return amps_; }
    Complex operator[](std::uint64_t index) const { return amps_[index]; }
    Complex &operator[](std::uint64_t index) { return amps_[index]; }
    Complex amplitude(const GroupElement &x) const;

    double norm() const;
    StateVector normalized() const;
    StateVector scaled(Complex factor) const;

    StateVector operator+(const StateVector &other) const;
    StateVector operator-(const StateVector &other) const;

   private:
    GroupSpec group_;
    std::vector<Complex> amps_;
};

/// Row-major dense complex matrix.
class Matrix {
   public:
    explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

    static Matrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    Complex operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
    Complex &operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }

    Matrix adjoint() const;
    Matrix operator*(const Matrix &other) const;
    Matrix operator+(const Matrix &other) const;
    Matrix operator-(const Matrix &other) const;
    Matrix scaled(Complex factor) const;
    Complex trace() const;
    double max_abs() const;

   private:
    std::size_t dim_;
    std::vector<Complex> data_;
};

/// Square operator on CG (unnormalized sums of projectors included).
class DensityOperator {
   public:
    explicit DensityOperator(GroupSpec group, std::uint64_t cap = kDefaultOperatorCap);
    DensityOperator(GroupSpec group, Matrix matrix);

    const GroupSpec &group() const { return group_; }
    const Matrix &matrix() const { return matrix_; }
    Matrix &matrix() { return matrix_; }
    std::size_t dimension() const { return matrix_.dim(); }

    /// Adds weight * |a><b|.
    void add_outer(const StateVector &a, const StateVector &b, Complex weight = 1.0);
    Complex trace() const { return matrix_.trace(); }
    /// max |M - M^dagger| entrywise.
    double hermiticity_error() const;

   private:
    GroupSpec group_;
    Matrix matrix_;
};

Complex inner_product(const StateVector &bra, const StateVector &ket);
double max_abs_diff(const StateVector &a, const StateVector &b);
double max_abs_diff(const DensityOperator &a, const DensityOperator &b);
/// |<a|b>|.
double fidelity(const StateVector &a, const StateVector &b);
/// a (x) b; a's sites come first and vary fastest.
StateVector tensor(const StateVector &a, const StateVector &b, std::uint64_t cap = kDefaultDimensionCap);

StateVector basis_state(const GroupElement &x, std::uint64_t cap = kDefaultDimensionCap);
/// |chi_t> = |G|^{-1/2} sum_y conj(chi_t(y)) |y>.
StateVector fourier_basis_state(const GroupElement &t, std::uint64_t cap = kDefaultDimensionCap);

/// F|x> = |G|^{-1/2} sum_y chi_x(y) |y>, applied factor by factor.
StateVector qft(const StateVector &state);
StateVector qft_inverse(const StateVector &state);
/// F (or F^dagger) on the listed sites only.
StateVector qft_sites(const StateVector &state, std::span<const std::size_t> sites, bool inverse = false);
/// Dense matrix of F_G with entry (y, x) = chi_x(y) / sqrt|G|.
Matrix qft_matrix(const GroupSpec &g);
/// Applies a dense matrix to a state.
StateVector apply(const Matrix &op, const StateVector &state);

/// |H|^{-1/2} sum_{z in H} conj(chi_a(z)) |z + b>.
StateVector coset_state(const GroupElement &b, const Subgroup &h, const GroupElement &a);
/// chi_a(b) |H-perp|^{-1/2} sum_{z in H-perp} chi_b(z) |z + a>, built without a transform.
StateVector coset_transform_closed_form(const GroupElement &b, const Subgroup &h, const GroupElement &a);

/// |y> -> |y + e>.
StateVector weyl_x(const GroupElement &e, const StateVector &state);
/// |y> -> chi_e(y) |y>.
StateVector weyl_z(const GroupElement &e, const StateVector &state);
/// X_{e1} Z_{e2}.
StateVector corrupt(const GroupElement &e1, const GroupElement &e2, const StateVector &state);
/// Translation by x acts on |chi_t> as the scalar chi_t(x).
bool translate_action_check(const GroupElement &x, const GroupElement &t, double tol = 1e-9);

/// (f * g)_z = sum_{x + y = z} f_x g_y. Not normalized.
StateVector convolve(const StateVector &f, const StateVector &g);
StateVector pointwise_product(const StateVector &f, const StateVector &g);

struct Measurement {
    GroupElement outcome;  // word over the measured sites, in the order given
    StateVector collapsed;
};

/// Projective measurement of `sites` in the standard basis. The only side effect is on rng.
Measurement measure_standard(const StateVector &state, std::span<const std::size_t> sites, Rng &rng);
/// Same, in the Fourier basis {|chi_t>}; the outcome is the Fourier label t.
Measurement measure_fourier(const StateVector &state, std::span<const std::size_t> sites, Rng &rng);
/// Born probabilities of the standard-basis outcomes on `sites`, indexed like the outcome word.
std::vector<double> outcome_probabilities(const StateVector &state, std::span<const std::size_t> sites);

/// Amplitudes with `sites` pinned to `values`, as a state on the remaining sites (in order).
StateVector restrict_sites(const StateVector &state, std::span<const std::size_t> sites, const GroupElement &values);
/// Site i of the result is site order[i] of the input.
StateVector permute_sites(const StateVector &state, std::span<const std::size_t> order);

/// sum_i |psi_i><psi_i|.
DensityOperator density_sum(std::span<const StateVector> states, std::uint64_t cap = kDefaultOperatorCap);
/// sum_i |psi_i>|psi_i>.
StateVector pair_sum(std::span<const StateVector> states, std::uint64_t cap = kDefaultDimensionCap);

}  // namespace abelcss

#endif
