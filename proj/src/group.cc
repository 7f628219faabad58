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

#include "abelcss/group.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

namespace abelcss {

namespace {

constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 62;

void require_same(const GroupSpec &a, const GroupSpec &b, const char *what) {
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": elements belong to different groups " + a.to_string() +
                                    " and " + b.to_string());
    }
}

void require_enumerable(const GroupSpec &g, std::uint64_t cap) {
    if (g.order() > cap) {
        throw ResourceError("group " + g.to_string() + " has order " + std::to_string(g.order()) +
                            ", above the enumeration cap " + std::to_string(cap));
    }
}

// Elements of the cyclic subgroup generated by x, starting at zero.
std::vector<std::uint64_t> cyclic_span(const GroupSpec &g, std::uint64_t x) {
    std::vector<std::uint64_t> out{0};
    for (std::uint64_t y = x; y != 0; y = g.add_index(y, x)) {
        out.push_back(y);
    }
    return out;
}

void sort_lex(const GroupSpec &g, std::vector<std::uint64_t> &indices) {
    std::sort(indices.begin(), indices.end(),
              [&](std::uint64_t a, std::uint64_t b) { return g.lex_key(a) < g.lex_key(b); });
}

}  // namespace

struct GroupSpec::Data {
    std::vector<int> moduli;
    std::size_t site_rank = 0;
    std::uint64_t order = 1;
    std::uint64_t exponent = 1;
    std::vector<std::uint64_t> strides;
    std::vector<std::uint64_t> lex_strides;
    std::vector<std::uint64_t> pair_weight;  // exponent / m_j
};

GroupSpec::GroupSpec() : GroupSpec(std::vector<int>{}, 0) {}

GroupSpec::GroupSpec(std::vector<int> moduli) : GroupSpec(moduli, moduli.size()) {}

GroupSpec::GroupSpec(std::vector<int> moduli, std::size_t site_rank) {
    auto d = std::make_shared<Data>();
    for (int m : moduli) {
        if (m < 2) {
            throw std::invalid_argument("cyclic factor order must be >= 2, got " + std::to_string(m));
        }
    }
    if (moduli.empty()) {
        site_rank = 0;
    } else if (site_rank == 0 || moduli.size() % site_rank != 0) {
        throw std::invalid_argument("site rank " + std::to_string(site_rank) + " does not divide " +
                                    std::to_string(moduli.size()) + " factors");
    }
    d->site_rank = site_rank;
    d->strides.resize(moduli.size());
    d->lex_strides.resize(moduli.size());
    for (std::size_t j = 0; j < moduli.size(); j++) {
        d->strides[j] = d->order;
        if (d->order > kMaxOrder / static_cast<std::uint64_t>(moduli[j])) {
            throw ResourceError("group order overflows 2^62");
        }
        d->order *= static_cast<std::uint64_t>(moduli[j]);
        d->exponent = std::lcm(d->exponent, static_cast<std::uint64_t>(moduli[j]));
    }
    std::uint64_t s = 1;
    for (std::size_t j = moduli.size(); j-- > 0;) {
        d->lex_strides[j] = s;
        s *= static_cast<std::uint64_t>(moduli[j]);
    }
    for (int m : moduli) {
        d->pair_weight.push_back(d->exponent / static_cast<std::uint64_t>(m));
    }
    d->moduli = std::move(moduli);
    data_ = std::move(d);
}

GroupSpec GroupSpec::cyclic(int m) { return GroupSpec({m}); }

const std::vector<int> &GroupSpec::moduli() const { return data_->moduli; }
std::size_t GroupSpec::rank() const { return data_->moduli.size(); }
std::size_t GroupSpec::site_rank() const { return data_->site_rank; }
std::size_t GroupSpec::sites() const { return rank() == 0 ? 0 : rank() / data_->site_rank; }
std::uint64_t GroupSpec::order() const { return data_->order; }
std::uint64_t GroupSpec::stride(std::size_t factor) const { return data_->strides.at(factor); }
std::uint64_t GroupSpec::exponent() const { return data_->exponent; }

GroupSpec GroupSpec::site_group() const {
    if (rank() == 0) {
        return *this;
    }
    return GroupSpec(std::vector<int>(moduli().begin(), moduli().begin() + static_cast<std::ptrdiff_t>(site_rank())));
}

GroupSpec GroupSpec::with_site_rank(std::size_t site_rank) const { return GroupSpec(moduli(), site_rank); }

GroupElement GroupSpec::zero() const { return GroupElement(*this, std::vector<int>(rank(), 0)); }

GroupElement GroupSpec::element(std::vector<int> coords) const { return GroupElement(*this, std::move(coords)); }

GroupElement GroupSpec::element_at(std::uint64_t index) const {
    if (index >= order()) {
        throw std::out_of_range("element index " + std::to_string(index) + " outside group of order " +
                                std::to_string(order()));
    }
    std::vector<int> coords(rank());
    decode(index, coords);
    return GroupElement(*this, std::move(coords));
}

std::uint64_t GroupSpec::index_of(std::span<const int> coords) const {
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < coords.size(); j++) {
        idx += static_cast<std::uint64_t>(coords[j]) * data_->strides[j];
    }
    return idx;
}

void GroupSpec::decode(std::uint64_t index, std::span<int> coords) const {
    const auto &m = data_->moduli;
    for (std::size_t j = 0; j < m.size(); j++) {
        auto mj = static_cast<std::uint64_t>(m[j]);
        coords[j] = static_cast<int>(index % mj);
        index /= mj;
    }
}

std::uint64_t GroupSpec::add_index(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t out = 0;
    const auto &m = data_->moduli;
    for (std::size_t j = 0; j < m.size(); j++) {
        auto mj = static_cast<std::uint64_t>(m[j]);
        out += ((a % mj + b % mj) % mj) * data_->strides[j];
        a /= mj;
        b /= mj;
    }
    return out;
}

std::uint64_t GroupSpec::neg_index(std::uint64_t a) const {
    std::uint64_t out = 0;
    const auto &m = data_->moduli;
    for (std::size_t j = 0; j < m.size(); j++) {
        auto mj = static_cast<std::uint64_t>(m[j]);
        out += ((mj - a % mj) % mj) * data_->strides[j];
        a /= mj;
    }
    return out;
}

std::uint64_t GroupSpec::sub_index(std::uint64_t a, std::uint64_t b) const { return add_index(a, neg_index(b)); }

std::uint64_t GroupSpec::scale_index(std::uint64_t a, std::int64_t k) const {
    std::uint64_t out = 0;
    const auto &m = data_->moduli;
    for (std::size_t j = 0; j < m.size(); j++) {
        auto mj = static_cast<std::int64_t>(m[j]);
        std::int64_t digit = static_cast<std::int64_t>(a % static_cast<std::uint64_t>(mj));
        std::int64_t r = ((digit * (k % mj)) % mj + mj) % mj;
        out += static_cast<std::uint64_t>(r) * data_->strides[j];
        a /= static_cast<std::uint64_t>(mj);
    }
    return out;
}

std::size_t GroupSpec::weight_of_index(std::uint64_t a) const {
    const auto &m = data_->moduli;
    std::size_t w = 0;
    std::size_t r = data_->site_rank;
    for (std::size_t s = 0; s < sites(); s++) {
        bool nonzero = false;
        for (std::size_t k = 0; k < r; k++) {
            auto mj = static_cast<std::uint64_t>(m[s * r + k]);
            nonzero |= (a % mj) != 0;
            a /= mj;
        }
        w += nonzero;
    }
    return w;
}

std::uint64_t GroupSpec::lex_key(std::uint64_t index) const {
    std::uint64_t key = 0;
    const auto &m = data_->moduli;
    for (std::size_t j = 0; j < m.size(); j++) {
        auto mj = static_cast<std::uint64_t>(m[j]);
        key += (index % mj) * data_->lex_strides[j];
        index /= mj;
    }
    return key;
}

std::uint64_t GroupSpec::pairing_phase(std::uint64_t x, std::uint64_t y) const {
    const auto &m = data_->moduli;
    std::uint64_t L = data_->exponent;
    std::uint64_t k = 0;
    for (std::size_t j = 0; j < m.size(); j++) {
        auto mj = static_cast<std::uint64_t>(m[j]);
        std::uint64_t t = ((x % mj) * (y % mj)) % mj;
        k = (k + t * data_->pair_weight[j]) % L;
        x /= mj;
        y /= mj;
    }
    return k;
}

std::string GroupSpec::to_string() const {
    if (rank() == 0) {
        return "{0}";
    }
    std::ostringstream out;
    for (std::size_t j = 0; j < rank(); j++) {
        if (j) {
            out << (j % site_rank() == 0 ? " | " : "x");
        }
        out << "Z" << moduli()[j];
    }
    return out.str();
}

bool GroupSpec::operator==(const GroupSpec &other) const {
    if (data_ == other.data_) {
        return true;
    }
    return data_->moduli == other.data_->moduli && data_->site_rank == other.data_->site_rank;
}

GroupSpec direct_power(const GroupSpec &g, std::size_t n) {
    std::vector<int> moduli;
    moduli.reserve(g.rank() * n);
    for (std::size_t i = 0; i < n; i++) {
        moduli.insert(moduli.end(), g.moduli().begin(), g.moduli().end());
    }
    return GroupSpec(std::move(moduli), g.rank());
}

GroupSpec direct_product(const GroupSpec &a, const GroupSpec &b) {
    if (a.rank() == 0) {
        return b;
    }
    if (b.rank() == 0) {
        return a;
    }
    if (a.site_rank() != b.site_rank()) {
        throw std::invalid_argument("direct_product: site ranks differ (" + std::to_string(a.site_rank()) + " vs " +
                                    std::to_string(b.site_rank()) + ")");
    }
    std::vector<int> moduli = a.moduli();
    moduli.insert(moduli.end(), b.moduli().begin(), b.moduli().end());
    return GroupSpec(std::move(moduli), a.site_rank());
}

GroupElement::GroupElement(GroupSpec group, std::vector<int> coords) : group_(std::move(group)), coords_(std::move(coords)) {
    if (coords_.size() != group_.rank()) {
        throw std::invalid_argument("element has " + std::to_string(coords_.size()) + " coordinates, group " +
                                    group_.to_string() + " has " + std::to_string(group_.rank()));
    }
    for (std::size_t j = 0; j < coords_.size(); j++) {
        if (coords_[j] < 0 || coords_[j] >= group_.moduli()[j]) {
            throw std::invalid_argument("coordinate " + std::to_string(coords_[j]) + " out of range for Z" +
                                        std::to_string(group_.moduli()[j]));
        }
    }
}

std::uint64_t GroupElement::index() const { return group_.index_of(coords_); }

bool GroupElement::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](int c) { return c == 0; });
}

GroupElement GroupElement::site(std::size_t s) const {
    std::size_t r = group_.site_rank();
    if (s >= group_.sites()) {
        throw std::out_of_range("site " + std::to_string(s) + " out of range");
    }
    return GroupElement(group_.site_group(), std::vector<int>(coords_.begin() + static_cast<std::ptrdiff_t>(s * r),
                                                              coords_.begin() + static_cast<std::ptrdiff_t>((s + 1) * r)));
}

GroupElement GroupElement::operator+(const GroupElement &other) const {
    require_same(group_, other.group_, "addition");
    std::vector<int> out(coords_.size());
    for (std::size_t j = 0; j < out.size(); j++) {
        out[j] = (coords_[j] + other.coords_[j]) % group_.moduli()[j];
    }
    return GroupElement(group_, std::move(out));
}

GroupElement GroupElement::operator-() const {
    std::vector<int> out(coords_.size());
    for (std::size_t j = 0; j < out.size(); j++) {
        int m = group_.moduli()[j];
        out[j] = (m - coords_[j]) % m;
    }
    return GroupElement(group_, std::move(out));
}

GroupElement GroupElement::operator-(const GroupElement &other) const { return *this + (-other); }

GroupElement GroupElement::operator*(std::int64_t k) const { return group_.element_at(group_.scale_index(index(), k)); }

bool GroupElement::operator==(const GroupElement &other) const {
    return group_ == other.group_ && coords_ == other.coords_;
}

bool GroupElement::operator<(const GroupElement &other) const { return coords_ < other.coords_; }

std::string GroupElement::to_string() const {
    std::ostringstream out;
    out << "(";
    for (std::size_t j = 0; j < coords_.size(); j++) {
        out << (j ? "," : "") << coords_[j];
    }
    out << ")";
    return out.str();
}

Complex root_of_unity(std::uint64_t k, std::uint64_t n) {
    k %= n;
    if ((4 * k) % n == 0) {
        switch ((4 * k) / n) {
            case 0:
                return {1.0, 0.0};
            case 1:
                return {0.0, 1.0};
            case 2:
                return {-1.0, 0.0};
            default:
                return {0.0, -1.0};
        }
    }
    double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

Complex character_at(const GroupSpec &g, std::uint64_t x, std::uint64_t y) {
    return root_of_unity(g.pairing_phase(x, y), g.exponent());
}

Complex character_eval(const GroupElement &x, const GroupElement &y) {
    require_same(x.group(), y.group(), "character_eval");
    return character_at(x.group(), x.index(), y.index());
}

std::size_t weight(const GroupElement &x) { return x.group().weight_of_index(x.index()); }

std::size_t distance(const GroupElement &x, const GroupElement &y) { return weight(x - y); }

Subgroup::Subgroup(GroupSpec ambient, std::vector<GroupElement> generators, std::vector<std::uint64_t> members,
                   std::vector<bool> mask)
    : ambient_(std::move(ambient)),
      generators_(std::move(generators)),
      members_(std::move(members)),
      mask_(std::move(mask)) {}

Subgroup Subgroup::whole(const GroupSpec &g, std::uint64_t cap) {
    std::vector<GroupElement> gens;
    for (std::size_t j = 0; j < g.rank(); j++) {
        std::vector<int> c(g.rank(), 0);
        c[j] = 1;
        gens.emplace_back(g, std::move(c));
    }
    return subgroup_from_generators(g, gens, cap);
}

Subgroup Subgroup::trivial(const GroupSpec &g, std::uint64_t cap) { return subgroup_from_generators(g, {}, cap); }

std::vector<GroupElement> Subgroup::elements() const {
    std::vector<GroupElement> out;
    out.reserve(members_.size());
    for (auto i : members_) {
        out.push_back(ambient_.element_at(i));
    }
    return out;
}

bool Subgroup::contains(const GroupElement &x) const {
    require_same(ambient_, x.group(), "Subgroup::contains");
    return mask_[x.index()];
}

bool Subgroup::is_subgroup_of(const Subgroup &other) const {
    if (ambient_ != other.ambient_) {
        return false;
    }
    return std::all_of(members_.begin(), members_.end(), [&](std::uint64_t i) { return other.mask_[i]; });
}

Subgroup subgroup_from_generators(const GroupSpec &g, const std::vector<GroupElement> &gens, std::uint64_t cap) {
    require_enumerable(g, cap);
    std::vector<std::uint64_t> gen_idx;
    for (const auto &x : gens) {
        require_same(g, x.group(), "subgroup_from_generators");
        gen_idx.push_back(x.index());
    }
    std::vector<bool> mask(g.order(), false);
    std::vector<std::uint64_t> members{0};
    mask[0] = true;
    for (std::size_t head = 0; head < members.size(); head++) {
        std::uint64_t a = members[head];
        for (auto x : gen_idx) {
            std::uint64_t b = g.add_index(a, x);
            if (!mask[b]) {
                mask[b] = true;
                members.push_back(b);
            }
        }
    }
    sort_lex(g, members);
    return Subgroup(g, gens, std::move(members), std::move(mask));
}

Subgroup subgroup_from_members(const GroupSpec &g, std::vector<std::uint64_t> members, std::uint64_t cap) {
    require_enumerable(g, cap);
    sort_lex(g, members);
    members.erase(std::unique(members.begin(), members.end()), members.end());
    std::vector<bool> mask(g.order(), false);
    for (auto i : members) {
        mask[i] = true;
    }
    if (members.empty() || members.front() != 0) {
        throw std::invalid_argument("subgroup member set must contain zero");
    }
    // Greedy generating set: add the first member not yet spanned.
    std::vector<bool> span(g.order(), false);
    std::vector<std::uint64_t> spanned{0};
    span[0] = true;
    std::vector<GroupElement> gens;
    for (auto m : members) {
        if (span[m]) {
            continue;
        }
        gens.push_back(g.element_at(m));
        auto cyc = cyclic_span(g, m);
        std::vector<std::uint64_t> next;
        for (auto s : spanned) {
            for (auto c : cyc) {
                auto t = g.add_index(s, c);
                if (!span[t]) {
                    span[t] = true;
                    next.push_back(t);
                }
            }
        }
        spanned.insert(spanned.end(), next.begin(), next.end());
    }
    if (spanned.size() != members.size()) {
        throw std::invalid_argument("member set is not closed under addition");
    }
    return Subgroup(g, std::move(gens), std::move(members), std::move(mask));
}

Subgroup annihilator(const Subgroup &h) {
    const GroupSpec &g = h.ambient();
    std::vector<std::uint64_t> gens;
    for (const auto &x : h.generators()) {
        gens.push_back(x.index());
    }
    std::vector<std::uint64_t> members;
    for (std::uint64_t x = 0; x < g.order(); x++) {
        bool ok = std::all_of(gens.begin(), gens.end(), [&](std::uint64_t y) { return g.pairing_phase(x, y) == 0; });
        if (ok) {
            members.push_back(x);
        }
    }
    return subgroup_from_members(g, std::move(members), g.order());
}

Complex character_sum_over(const Subgroup &h, const GroupElement &x) {
    if (h.ambient() != x.group()) {
        throw std::invalid_argument("character_sum_over: element is not in the ambient group of H");
    }
    Complex sum{0.0, 0.0};
    auto xi = x.index();
    for (auto y : h.member_indices()) {
        sum += character_at(h.ambient(), xi, y);
    }
    return sum;
}

std::vector<Subgroup> enumerate_subgroups(const GroupSpec &g, std::uint64_t cap) {
    require_enumerable(g, cap);
    std::set<std::vector<std::uint64_t>> seen;
    std::vector<std::vector<std::uint64_t>> queue{{0}};
    seen.insert({0});
    for (std::size_t head = 0; head < queue.size(); head++) {
        auto current = queue[head];
        std::vector<bool> in(g.order(), false);
        for (auto i : current) {
            in[i] = true;
        }
        for (std::uint64_t x = 1; x < g.order(); x++) {
            if (in[x]) {
                continue;
            }
            std::vector<bool> mark(in);
            std::vector<std::uint64_t> next(current);
            auto cyc = cyclic_span(g, x);
            for (auto s : current) {
                for (auto c : cyc) {
                    auto t = g.add_index(s, c);
                    if (!mark[t]) {
                        mark[t] = true;
                        next.push_back(t);
                    }
                }
            }
            std::sort(next.begin(), next.end());
            if (seen.insert(next).second) {
                queue.push_back(std::move(next));
            }
        }
    }
    std::vector<Subgroup> out;
    out.reserve(queue.size());
    for (auto &members : queue) {
        out.push_back(subgroup_from_members(g, std::move(members), cap));
    }
    std::sort(out.begin(), out.end(), [](const Subgroup &a, const Subgroup &b) {
        if (a.order() != b.order()) {
            return a.order() < b.order();
        }
        return a.member_indices() < b.member_indices();
    });
    return out;
}

CosetTable::CosetTable(const Subgroup &ambient, const Subgroup &sub) : ambient_(ambient), sub_(sub) {
    if (!sub.is_subgroup_of(ambient)) {
        throw std::invalid_argument("coset_table: H is not a subgroup of the ambient subgroup");
    }
    const GroupSpec &g = ambient.ambient();
    std::vector<std::uint64_t> order = ambient.member_indices();
    std::stable_sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
        return g.weight_of_index(a) < g.weight_of_index(b);
    });
    label_.assign(g.order(), kNoCoset);
    for (auto e : order) {
        if (label_[e] != kNoCoset) {
            continue;
        }
        auto c = static_cast<std::uint32_t>(rep_index_.size());
        rep_index_.push_back(e);
        representatives_.push_back(g.element_at(e));
        for (auto h : sub.member_indices()) {
            label_[g.add_index(e, h)] = c;
        }
    }
}

std::size_t CosetTable::index_of_index(std::uint64_t x) const {
    if (x >= label_.size() || label_[x] == kNoCoset) {
        throw std::invalid_argument("coset_table: element is outside the ambient subgroup");
    }
    return label_[x];
}

std::size_t CosetTable::index_of(const GroupElement &x) const {
    if (x.group() != ambient_.ambient()) {
        throw std::invalid_argument("coset_table: element belongs to a different group");
    }
    return index_of_index(x.index());
}

CosetTable coset_table(const GroupSpec &ambient, const Subgroup &h) {
    return CosetTable(Subgroup::whole(ambient, std::max(ambient.order(), kDefaultEnumerationCap)), h);
}

CosetTable coset_table(const Subgroup &ambient, const Subgroup &h) { return CosetTable(ambient, h); }

}  // namespace abelcss
