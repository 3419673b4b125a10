#include <cstdlib>
#include <utility>

#include "tower2/error.hpp"
#include "tower2/group2.hpp"

namespace tower2 {

namespace {

std::int64_t mod_pos(std::int64_t x, std::int64_t m) {
    std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

}  // namespace

AbelianLattice::AbelianLattice(const IntMat2& rows) : rows_(rows) {
    const std::int64_t det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0];
    if (det == 0) throw Error(ErrorKind::precondition, "relation lattice is not of full rank");

    IntMat2 a = rows;
    IntMat2 v = {{{1, 0}, {0, 1}}};
    auto swap_cols = [&](int i, int j) {
        for (int r = 0; r < 2; ++r) {
            std::swap(a[r][i], a[r][j]);
            std::swap(v[r][i], v[r][j]);
        }
    };
    // column dst += k * column src, applied to the matrix and the transform
    auto add_col = [&](int dst, int src, std::int64_t k) {
        for (int r = 0; r < 2; ++r) {
            a[r][dst] += k * a[r][src];
            v[r][dst] += k * v[r][src];
        }
    };

    for (;;) {
        int bi = -1, bj = -1;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                if (a[i][j] != 0 && (bi < 0 || std::llabs(a[i][j]) < std::llabs(a[bi][bj]))) {
                    bi = i;
                    bj = j;
                }
            }
        }
        if (bi == 1) std::swap(a[0], a[1]);
        if (bj == 1) swap_cols(0, 1);

        const std::int64_t q_row = a[1][0] / a[0][0];
        a[1][0] -= q_row * a[0][0];
        a[1][1] -= q_row * a[0][1];
        add_col(1, 0, -(a[0][1] / a[0][0]));
        if (a[1][0] != 0 || a[0][1] != 0) continue;
        if (a[1][1] % a[0][0] != 0) {
            a[0][1] += a[1][1];
            continue;
        }
        break;
    }
    for (int c = 0; c < 2; ++c) {
        if (a[c][c] < 0) {
            for (int r = 0; r < 2; ++r) {
                a[r][c] = -a[r][c];
                v[r][c] = -v[r][c];
            }
        }
    }
    d1_ = static_cast<std::uint64_t>(a[0][0]);
    d2_ = static_cast<std::uint64_t>(a[1][1]);
    v_ = v;
    const std::int64_t dv = v[0][0] * v[1][1] - v[0][1] * v[1][0];
    v_inv_ = {{{v[1][1] * dv, -v[0][1] * dv}, {-v[1][0] * dv, v[0][0] * dv}}};
}

AbelianType AbelianLattice::type() const {
    std::vector<std::uint64_t> orders;
    if (d1_ > 1) orders.push_back(d1_);
    if (d2_ > 1) orders.push_back(d2_);
    return AbelianType::from_orders(orders);
}

Elem AbelianLattice::encode(std::int64_t s, std::int64_t t) const {
    const std::int64_t w1 = mod_pos(s * v_[0][0] + t * v_[1][0], static_cast<std::int64_t>(d1_));
    const std::int64_t w2 = mod_pos(s * v_[0][1] + t * v_[1][1], static_cast<std::int64_t>(d2_));
    return static_cast<Elem>(w1 * static_cast<std::int64_t>(d2_) + w2);
}

IntVec2 AbelianLattice::original(Elem a) const {
    const IntVec2 w = canonical(a);
    return {w[0] * v_inv_[0][0] + w[1] * v_inv_[1][0], w[0] * v_inv_[0][1] + w[1] * v_inv_[1][1]};
}

Elem AbelianLattice::add(Elem a, Elem b) const {
    const std::uint64_t x1 = a / d2_, x2 = a % d2_;
    const std::uint64_t y1 = b / d2_, y2 = b % d2_;
    return static_cast<Elem>(((x1 + y1) % d1_) * d2_ + (x2 + y2) % d2_);
}

Elem AbelianLattice::neg(Elem a) const {
    const std::uint64_t x1 = a / d2_, x2 = a % d2_;
    return static_cast<Elem>(((d1_ - x1) % d1_) * d2_ + (d2_ - x2) % d2_);
}

Elem AbelianLattice::scale(Elem a, std::int64_t k) const {
    const IntVec2 w = canonical(a);
    const std::int64_t w1 = mod_pos(w[0] * mod_pos(k, static_cast<std::int64_t>(d1_)), static_cast<std::int64_t>(d1_));
    const std::int64_t w2 = mod_pos(w[1] * mod_pos(k, static_cast<std::int64_t>(d2_)), static_cast<std::int64_t>(d2_));
    return static_cast<Elem>(w1 * static_cast<std::int64_t>(d2_) + w2);
}

}  // namespace tower2
