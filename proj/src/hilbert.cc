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

#include "abelcss/hilbert.h"

#include <algorithm>
#include <cmath>

namespace abelcss {

namespace {

constexpr double kBranchFloor = 1e-12;

void require_same_group(const GroupSpec &a, const GroupSpec &b, const char *what) {
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": groups differ (" + a.to_string() + " vs " + b.to_string() +
                                    ")");
    }
}

struct Axis {
    std::uint64_t stride;
    std::uint64_t modulus;
};

// Factor axes covered by the listed sites, in site order.
std::vector<Axis> site_axes(const GroupSpec &g, std::span<const std::size_t> sites) {
    std::vector<Axis> axes;
    std::size_t r = g.site_rank();
    for (auto s : sites) {
        if (s >= g.sites()) {
            throw std::out_of_range("site " + std::to_string(s) + " out of range for " + g.to_string());
        }
        for (std::size_t k = 0; k < r; k++) {
            std::size_t j = s * r + k;
            axes.push_back({g.stride(j), static_cast<std::uint64_t>(g.moduli()[j])});
        }
    }
    return axes;
}

GroupSpec sites_group(const GroupSpec &g, std::span<const std::size_t> sites) {
    std::vector<int> moduli;
    std::size_t r = g.site_rank();
    for (auto s : sites) {
        for (std::size_t k = 0; k < r; k++) {
            moduli.push_back(g.moduli()[s * r + k]);
        }
    }
    return GroupSpec(std::move(moduli), r);
}

// Index in the group of the listed axes of the digits that state index i has on them.
std::uint64_t project_index(std::uint64_t i, const std::vector<Axis> &axes) {
    std::uint64_t out = 0;
    std::uint64_t mult = 1;
    for (const auto &a : axes) {
        out += ((i / a.stride) % a.modulus) * mult;
        mult *= a.modulus;
    }
    return out;
}

void apply_dft_axis(std::vector<Complex> &amps, std::uint64_t stride, int m, bool inverse) {
    auto um = static_cast<std::uint64_t>(m);
    std::vector<Complex> table(um * um);
    for (std::uint64_t x = 0; x < um; x++) {
        for (std::uint64_t y = 0; y < um; y++) {
            Complex w = root_of_unity((x * y) % um, um);
            table[y * um + x] = inverse ? std::conj(w) : w;
        }
    }
    double scale = 1.0 / std::sqrt(static_cast<double>(m));
    std::vector<Complex> in(um);
    for (std::uint64_t base = 0; base < amps.size(); base++) {
        if ((base / stride) % um != 0) {
            continue;
        }
        for (std::uint64_t x = 0; x < um; x++) {
            in[x] = amps[base + x * stride];
        }
        for (std::uint64_t y = 0; y < um; y++) {
            Complex acc{0.0, 0.0};
            for (std::uint64_t x = 0; x < um; x++) {
                acc += table[y * um + x] * in[x];
            }
            amps[base + y * stride] = acc * scale;
        }
    }
}

StateVector qft_factors(const StateVector &state, const std::vector<std::size_t> &factors, bool inverse) {
    StateVector out = state;
    const GroupSpec &g = state.group();
    for (auto j : factors) {
        apply_dft_axis(out.amplitudes(), g.stride(j), g.moduli()[j], inverse);
    }
    return out;
}

std::vector<std::size_t> all_factors(const GroupSpec &g) {
    std::vector<std::size_t> f(g.rank());
    for (std::size_t j = 0; j < f.size(); j++) {
        f[j] = j;
    }
    return f;
}

}  // namespace

StateVector::StateVector(GroupSpec group, std::uint64_t cap) : group_(std::move(group)) {
    if (group_.order() > cap) {
        throw ResourceError("state over " + group_.to_string() + " needs dimension " + std::to_string(group_.order()) +
                            ", above the cap " + std::to_string(cap));
    }
    amps_.assign(group_.order(), Complex{0.0, 0.0});
}

StateVector::StateVector(GroupSpec group, std::vector<Complex> amplitudes, std::uint64_t cap)
    : StateVector(std::move(group), cap) {
    if (amplitudes.size() != amps_.size()) {
        throw std::invalid_argument("amplitude vector has length " + std::to_string(amplitudes.size()) +
                                    ", expected " + std::to_string(amps_.size()));
    }
    amps_ = std::move(amplitudes);
}

Complex StateVector::amplitude(const GroupElement &x) const {
    require_same_group(group_, x.group(), "StateVector::amplitude");
    return amps_[x.index()];
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

StateVector StateVector::normalized() const {
    double n = norm();
    if (n < kBranchFloor) {
        throw InvariantViolation("cannot normalize a zero vector");
    }
    return scaled(1.0 / n);
}

StateVector StateVector::scaled(Complex factor) const {
    StateVector out = *this;
    for (auto &a : out.amps_) {
        a *= factor;
    }
    return out;
}

StateVector StateVector::operator+(const StateVector &other) const {
    require_same_group(group_, other.group_, "StateVector::operator+");
    StateVector out = *this;
    for (std::size_t i = 0; i < amps_.size(); i++) {
        out.amps_[i] += other.amps_[i];
    }
    return out;
}

StateVector StateVector::operator-(const StateVector &other) const { return *this + other.scaled(-1.0); }

Matrix Matrix::identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; i++) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix out(dim_);
    for (std::size_t r = 0; r < dim_; r++) {
        for (std::size_t c = 0; c < dim_; c++) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

Matrix Matrix::operator*(const Matrix &other) const {
    if (other.dim_ != dim_) {
        throw std::invalid_argument("matrix dimensions differ");
    }
    Matrix out(dim_);
    for (std::size_t r = 0; r < dim_; r++) {
        for (std::size_t k = 0; k < dim_; k++) {
            Complex a = (*this)(r, k);
            if (a == Complex{}) {
                continue;
            }
            for (std::size_t c = 0; c < dim_; c++) {
                out(r, c) += a * other(k, c);
            }
        }
    }
    return out;
}

Matrix Matrix::operator+(const Matrix &other) const {
    if (other.dim_ != dim_) {
        throw std::invalid_argument("matrix dimensions differ");
    }
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); i++) {
        out.data_[i] += other.data_[i];
    }
    return out;
}

Matrix Matrix::operator-(const Matrix &other) const { return *this + other.scaled(-1.0); }

Matrix Matrix::scaled(Complex factor) const {
    Matrix out = *this;
    for (auto &x : out.data_) {
        x *= factor;
    }
    return out;
}

Complex Matrix::trace() const {
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < dim_; i++) {
        t += (*this)(i, i);
    }
    return t;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (const auto &x : data_) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

DensityOperator::DensityOperator(GroupSpec group, std::uint64_t cap) : group_(std::move(group)), matrix_(0) {
    if (group_.order() > cap) {
        throw ResourceError("operator over " + group_.to_string() + " needs dimension " +
                            std::to_string(group_.order()) + ", above the cap " + std::to_string(cap));
    }
    matrix_ = Matrix(group_.order());
}

DensityOperator::DensityOperator(GroupSpec group, Matrix matrix) : group_(std::move(group)), matrix_(std::move(matrix)) {
    if (matrix_.dim() != group_.order()) {
        throw std::invalid_argument("operator dimension does not match the group order");
    }
}

void DensityOperator::add_outer(const StateVector &a, const StateVector &b, Complex weight) {
    require_same_group(group_, a.group(), "DensityOperator::add_outer");
    require_same_group(group_, b.group(), "DensityOperator::add_outer");
    std::size_t d = matrix_.dim();
    for (std::size_t r = 0; r < d; r++) {
        if (a[r] == Complex{}) {
            continue;
        }
        Complex ar = weight * a[r];
        for (std::size_t c = 0; c < d; c++) {
            matrix_(r, c) += ar * std::conj(b[c]);
        }
    }
}

double DensityOperator::hermiticity_error() const { return (matrix_ - matrix_.adjoint()).max_abs(); }

Complex inner_product(const StateVector &bra, const StateVector &ket) {
    require_same_group(bra.group(), ket.group(), "inner_product");
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < bra.dimension(); i++) {
        s += std::conj(bra[i]) * ket[i];
    }
    return s;
}

double max_abs_diff(const StateVector &a, const StateVector &b) {
    require_same_group(a.group(), b.group(), "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.dimension(); i++) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

double max_abs_diff(const DensityOperator &a, const DensityOperator &b) {
    require_same_group(a.group(), b.group(), "max_abs_diff");
    return (a.matrix() - b.matrix()).max_abs();
}

double fidelity(const StateVector &a, const StateVector &b) { return std::abs(inner_product(a, b)); }

StateVector tensor(const StateVector &a, const StateVector &b, std::uint64_t cap) {
    StateVector out(direct_product(a.group(), b.group()), cap);
    std::size_t da = a.dimension();
    for (std::size_t j = 0; j < b.dimension(); j++) {
        if (b[j] == Complex{}) {
            continue;
        }
        for (std::size_t i = 0; i < da; i++) {
            out[i + da * j] = a[i] * b[j];
        }
    }
    return out;
}

StateVector basis_state(const GroupElement &x, std::uint64_t cap) {
    StateVector s(x.group(), cap);
    s[x.index()] = 1.0;
    return s;
}

StateVector fourier_basis_state(const GroupElement &t, std::uint64_t cap) {
    const GroupSpec &g = t.group();
    StateVector s(g, cap);
    double scale = 1.0 / std::sqrt(static_cast<double>(g.order()));
    auto ti = t.index();
    for (std::uint64_t y = 0; y < g.order(); y++) {
        s[y] = std::conj(character_at(g, ti, y)) * scale;
    }
    return s;
}

StateVector qft(const StateVector &state) { return qft_factors(state, all_factors(state.group()), false); }

StateVector qft_inverse(const StateVector &state) { return qft_factors(state, all_factors(state.group()), true); }

StateVector qft_sites(const StateVector &state, std::span<const std::size_t> sites, bool inverse) {
    const GroupSpec &g = state.group();
    std::vector<std::size_t> factors;
    for (auto s : sites) {
        if (s >= g.sites()) {
            throw std::out_of_range("site " + std::to_string(s) + " out of range for " + g.to_string());
        }
        for (std::size_t k = 0; k < g.site_rank(); k++) {
            factors.push_back(s * g.site_rank() + k);
        }
    }
    return qft_factors(state, factors, inverse);
}

Matrix qft_matrix(const GroupSpec &g) {
    if (g.order() > kDefaultOperatorCap) {
        throw ResourceError("QFT matrix of " + g.to_string() + " exceeds the operator cap");
    }
    Matrix m(g.order());
    double scale = 1.0 / std::sqrt(static_cast<double>(g.order()));
    for (std::uint64_t x = 0; x < g.order(); x++) {
        for (std::uint64_t y = 0; y < g.order(); y++) {
            m(y, x) = character_at(g, x, y) * scale;
        }
    }
    return m;
}

StateVector apply(const Matrix &op, const StateVector &state) {
    if (op.dim() != state.dimension()) {
        throw std::invalid_argument("operator and state dimensions differ");
    }
    StateVector out(state.group(), state.dimension());
    for (std::size_t r = 0; r < op.dim(); r++) {
        Complex acc{0.0, 0.0};
        for (std::size_t c = 0; c < op.dim(); c++) {
            acc += op(r, c) * state[c];
        }
        out[r] = acc;
    }
    return out;
}

StateVector coset_state(const GroupElement &b, const Subgroup &h, const GroupElement &a) {
    const GroupSpec &g = h.ambient();
    require_same_group(g, a.group(), "coset_state");
    require_same_group(g, b.group(), "coset_state");
    StateVector s(g);
    double scale = 1.0 / std::sqrt(static_cast<double>(h.order()));
    auto ai = a.index();
    auto bi = b.index();
    for (auto z : h.member_indices()) {
        s[g.add_index(z, bi)] += std::conj(character_at(g, ai, z)) * scale;
    }
    return s;
}

StateVector coset_transform_closed_form(const GroupElement &b, const Subgroup &h, const GroupElement &a) {
    const GroupSpec &g = h.ambient();
    require_same_group(g, a.group(), "coset_transform_closed_form");
    require_same_group(g, b.group(), "coset_transform_closed_form");
    Subgroup perp = annihilator(h);
    auto ai = a.index();
    auto bi = b.index();
    Complex prefactor = character_at(g, ai, bi) / std::sqrt(static_cast<double>(perp.order()));
    StateVector s(g);
    for (auto z : perp.member_indices()) {
        s[g.add_index(z, ai)] += prefactor * character_at(g, bi, z);
    }
    return s;
}

StateVector weyl_x(const GroupElement &e, const StateVector &state) {
    const GroupSpec &g = state.group();
    require_same_group(g, e.group(), "weyl_x");
    StateVector out(g, state.dimension());
    auto ei = e.index();
    for (std::uint64_t y = 0; y < g.order(); y++) {
        out[g.add_index(y, ei)] = state[y];
    }
    return out;
}

StateVector weyl_z(const GroupElement &e, const StateVector &state) {
    const GroupSpec &g = state.group();
    require_same_group(g, e.group(), "weyl_z");
    StateVector out(g, state.dimension());
    auto ei = e.index();
    for (std::uint64_t y = 0; y < g.order(); y++) {
        out[y] = character_at(g, ei, y) * state[y];
    }
    return out;
}

StateVector corrupt(const GroupElement &e1, const GroupElement &e2, const StateVector &state) {
    return weyl_x(e1, weyl_z(e2, state));
}

bool translate_action_check(const GroupElement &x, const GroupElement &t, double tol) {
    StateVector chi = fourier_basis_state(t);
    StateVector moved = weyl_x(x, chi);
    StateVector expected = chi.scaled(character_eval(t, x));
    return max_abs_diff(moved, expected) <= tol;
}

StateVector convolve(const StateVector &f, const StateVector &g) {
    const GroupSpec &grp = f.group();
    require_same_group(grp, g.group(), "convolve");
    StateVector out(grp, f.dimension());
    for (std::uint64_t x = 0; x < grp.order(); x++) {
        if (f[x] == Complex{}) {
            continue;
        }
        for (std::uint64_t y = 0; y < grp.order(); y++) {
            out[grp.add_index(x, y)] += f[x] * g[y];
        }
    }
    return out;
}

StateVector pointwise_product(const StateVector &f, const StateVector &g) {
    require_same_group(f.group(), g.group(), "pointwise_product");
    StateVector out = f;
    for (std::size_t i = 0; i < f.dimension(); i++) {
        out[i] *= g[i];
    }
    return out;
}

std::vector<double> outcome_probabilities(const StateVector &state, std::span<const std::size_t> sites) {
    auto axes = site_axes(state.group(), sites);
    std::uint64_t outcomes = 1;
    for (const auto &a : axes) {
        outcomes *= a.modulus;
    }
    std::vector<double> probs(outcomes, 0.0);
    for (std::uint64_t i = 0; i < state.dimension(); i++) {
        probs[project_index(i, axes)] += std::norm(state[i]);
    }
    return probs;
}

Measurement measure_standard(const StateVector &state, std::span<const std::size_t> sites, Rng &rng) {
    auto axes = site_axes(state.group(), sites);
    GroupSpec outcome_group = sites_group(state.group(), sites);
    auto probs = outcome_probabilities(state, sites);
    double total = 0.0;
    for (double p : probs) {
        total += p;
    }
    double u = rng.uniform01() * total;
    std::uint64_t chosen = probs.size();
    double cum = 0.0;
    for (std::uint64_t k = 0; k < probs.size(); k++) {
        if (probs[k] <= 0.0) {
            continue;
        }
        chosen = k;
        cum += probs[k];
        if (u < cum) {
            break;
        }
    }
    if (chosen == probs.size() || probs[chosen] < kBranchFloor) {
        throw InvariantViolation("measurement selected a branch with probability below 1e-12");
    }
    double scale = 1.0 / std::sqrt(probs[chosen]);
    StateVector collapsed(state.group(), state.dimension());
    for (std::uint64_t i = 0; i < state.dimension(); i++) {
        if (project_index(i, axes) == chosen) {
            collapsed[i] = state[i] * scale;
        }
    }
    return {outcome_group.element_at(chosen), std::move(collapsed)};
}

Measurement measure_fourier(const StateVector &state, std::span<const std::size_t> sites, Rng &rng) {
    // F^dagger |chi_t> = |-t>, F |-t> = |chi_t>.
    StateVector rotated = qft_sites(state, sites, true);
    Measurement m = measure_standard(rotated, sites, rng);
    return {-m.outcome, qft_sites(m.collapsed, sites, false)};
}

StateVector restrict_sites(const StateVector &state, std::span<const std::size_t> sites, const GroupElement &values) {
    const GroupSpec &g = state.group();
    auto axes = site_axes(g, sites);
    GroupSpec pinned = sites_group(g, sites);
    if (values.group().moduli() != pinned.moduli()) {
        throw std::invalid_argument("restrict_sites: pinned values do not match the selected sites");
    }
    std::vector<std::size_t> rest;
    for (std::size_t s = 0; s < g.sites(); s++) {
        if (std::find(sites.begin(), sites.end(), s) == sites.end()) {
            rest.push_back(s);
        }
    }
    auto rest_axes = site_axes(g, rest);
    StateVector out(sites_group(g, rest), state.dimension());
    auto want = values.index();
    for (std::uint64_t i = 0; i < state.dimension(); i++) {
        if (project_index(i, axes) == want) {
            out[project_index(i, rest_axes)] = state[i];
        }
    }
    return out;
}

StateVector permute_sites(const StateVector &state, std::span<const std::size_t> order) {
    const GroupSpec &g = state.group();
    if (order.size() != g.sites()) {
        throw std::invalid_argument("permute_sites: order must list every site once");
    }
    std::vector<bool> seen(g.sites(), false);
    for (auto s : order) {
        if (s >= g.sites() || seen[s]) {
            throw std::invalid_argument("permute_sites: order must list every site once");
        }
        seen[s] = true;
    }
    auto axes = site_axes(g, order);
    StateVector out(sites_group(g, order), state.dimension());
    for (std::uint64_t i = 0; i < state.dimension(); i++) {
        out[project_index(i, axes)] = state[i];
    }
    return out;
}

DensityOperator density_sum(std::span<const StateVector> states, std::uint64_t cap) {
    if (states.empty()) {
        throw std::invalid_argument("density_sum of an empty family");
    }
    DensityOperator rho(states.front().group(), cap);
    for (const auto &s : states) {
        rho.add_outer(s, s);
    }
    return rho;
}

StateVector pair_sum(std::span<const StateVector> states, std::uint64_t cap) {
    if (states.empty()) {
        throw std::invalid_argument("pair_sum of an empty family");
    }
    StateVector acc(direct_product(states.front().group(), states.front().group()), cap);
    for (const auto &s : states) {
        acc = acc + tensor(s, s, cap);
    }
    return acc;
}

}  // namespace abelcss
