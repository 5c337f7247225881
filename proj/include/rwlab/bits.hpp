#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace rwlab {

/// Packed bit vector of fixed size. Bits past size() are kept zero so that
/// whole-word operations never leak state between vectors.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n, bool value = false)
        : n_(n), w_(words_for(n), value ? ~std::uint64_t{0} : 0) {
        trim();
    }

    static BitVec indicator(std::size_t n, std::size_t i) {
        BitVec v(n);
        v.set(i);
        return v;
    }

    std::size_t size() const { return n_; }

    bool test(std::size_t i) const {
        assert(i < n_);
        return (w_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i) {
        assert(i < n_);
        w_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
    void reset(std::size_t i) {
        assert(i < n_);
        w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
    void flip(std::size_t i) {
        assert(i < n_);
        w_[i >> 6] ^= std::uint64_t{1} << (i & 63);
    }
    void clear() { std::fill(w_.begin(), w_.end(), 0); }

    bool any() const {
        for (auto w : w_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }

    BitVec& operator|=(const BitVec& o) {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    BitVec& operator&=(const BitVec& o) {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }

    bool intersects(const BitVec& o) const {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    /// a <= b entry-wise
    static bool dominated(const BitVec& a, const BitVec& b) {
        assert(a.n_ == b.n_);
        for (std::size_t i = 0; i < a.w_.size(); ++i)
            if (a.w_[i] & ~b.w_[i]) return false;
        return true;
    }

    template <typename F>
    void for_each_set(F&& f) const {
        for (std::size_t wi = 0; wi < w_.size(); ++wi) {
            std::uint64_t w = w_[wi];
            while (w) {
                f(wi * 64 + (std::size_t)std::countr_zero(w));
                w &= w - 1;
            }
        }
    }

    /// "0101..."; character i is bit i
    std::string to_string() const {
        std::string s(n_, '0');
        for_each_set([&](std::size_t i) { s[i] = '1'; });
        return s;
    }

    /// inverse of to_string; caller validates the characters
    static BitVec from_string(const std::string& s) {
        BitVec v(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            assert(s[i] == '0' || s[i] == '1');
            if (s[i] == '1') v.set(i);
        }
        return v;
    }

    bool operator==(const BitVec&) const = default;

private:
    static std::size_t words_for(std::size_t n) { return (n + 63) / 64; }
    void trim() {
        if (n_ & 63) w_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;

    friend class BitMatrix;
};

/// Dense boolean matrix with packed rows; the row layout makes the frontier
/// step and the cubic products word-parallel.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_((cols + 63) / 64), w_(rows * stride_, 0) {}

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        assert(r < rows_ && c < cols_);
        return (w_[r * stride_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(std::size_t r, std::size_t c) {
        assert(r < rows_ && c < cols_);
        w_[r * stride_ + (c >> 6)] |= std::uint64_t{1} << (c & 63);
    }

    /// word wi of row r |= mask; bulk-set entry point for batched builders
    void or_word(std::size_t r, std::size_t wi, std::uint64_t mask) {
        assert(r < rows_ && wi < stride_);
        w_[r * stride_ + wi] |= mask;
    }

    /// dst |= row r
    void or_row_into(std::size_t r, BitVec& dst) const {
        assert(r < rows_ && dst.size() == cols_);
        const std::uint64_t* src = &w_[r * stride_];
        for (std::size_t i = 0; i < stride_; ++i) dst.w_[i] |= src[i];
    }

    /// dst = OR of row u over every set bit u of sel; the frontier step
    /// kernel. Fixed-stride instantiations keep the accumulator in registers
    /// instead of bouncing dst through memory once per selected row.
    void or_rows_selected(const BitVec& sel, BitVec& dst) const {
        assert(sel.size() == rows_ && dst.size() == cols_);
        switch (stride_) {
            case 1: or_rows_selected_fixed<1>(sel, dst); return;
            case 2: or_rows_selected_fixed<2>(sel, dst); return;
            case 4: or_rows_selected_fixed<4>(sel, dst); return;
            case 8: or_rows_selected_fixed<8>(sel, dst); return;
            default: break;
        }
        dst.clear();
        sel.for_each_set([&](std::size_t u) { or_row_into(u, dst); });
    }

    /// row r of this |= row s of other; both matrices share the column count
    void or_row_from(std::size_t r, const BitMatrix& other, std::size_t s) {
        assert(cols_ == other.cols_ && r < rows_ && s < other.rows_);
        std::uint64_t* dst = &w_[r * stride_];
        const std::uint64_t* src = &other.w_[s * stride_];
        for (std::size_t i = 0; i < stride_; ++i) dst[i] |= src[i];
    }

    BitVec row(std::size_t r) const {
        BitVec v(cols_);
        or_row_into(r, v);
        return v;
    }

    bool row_intersects(std::size_t r, const BitVec& v) const {
        assert(r < rows_ && v.size() == cols_);
        const std::uint64_t* src = &w_[r * stride_];
        for (std::size_t i = 0; i < stride_; ++i)
            if (src[i] & v.w_[i]) return true;
        return false;
    }

    template <typename F>
    void for_each_set_in_row(std::size_t r, F&& f) const {
        assert(r < rows_);
        const std::uint64_t* src = &w_[r * stride_];
        for (std::size_t wi = 0; wi < stride_; ++wi) {
            std::uint64_t w = src[wi];
            while (w) {
                f(wi * 64 + (std::size_t)std::countr_zero(w));
                w &= w - 1;
            }
        }
    }

    std::size_t count_ones() const {
        std::size_t c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }

    /// naive cubic boolean product, word-parallel over rows of b
    static BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
        assert(a.cols_ == b.rows_);
        BitMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            a.for_each_set_in_row(i, [&](std::size_t k) { c.or_row_from(i, b, k); });
        return c;
    }

    BitMatrix transposed() const {
        BitMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for_each_set_in_row(r, [&](std::size_t c) { t.set(c, r); });
        return t;
    }

    bool operator==(const BitMatrix&) const = default;

private:
    template <std::size_t S>
    void or_rows_selected_fixed(const BitVec& sel, BitVec& dst) const {
        // U independent accumulator banks break the OR latency chain; at
        // every stride the banks total 8 words, folded once at the end
        constexpr std::size_t U = S >= 8 ? 1 : 8 / S;
        const std::uint64_t* rows = w_.data();
        const std::uint64_t* sw = sel.w_.data();
        const std::size_t nw = sel.w_.size();
        std::uint64_t acc[U][S] = {};
        for (std::size_t wi = 0; wi < nw; ++wi) {
            std::uint64_t b = sw[wi];
            const std::size_t base = wi * 64;
            if (b == ~std::uint64_t{0}) {
                // 64 consecutive selected rows: stream the block
                const std::uint64_t* src = rows + base * S;
                for (std::size_t r = 0; r < 64; r += U)
                    for (std::size_t j = 0; j < U; ++j)
                        for (std::size_t i = 0; i < S; ++i) acc[j][i] |= src[(r + j) * S + i];
                continue;
            }
            while (b) {
                const std::uint64_t* src = rows + (base + (std::size_t)std::countr_zero(b)) * S;
                b &= b - 1;
                for (std::size_t i = 0; i < S; ++i) acc[0][i] |= src[i];
            }
        }
        for (std::size_t j = 1; j < U; ++j)
            for (std::size_t i = 0; i < S; ++i) acc[0][i] |= acc[j][i];
        for (std::size_t i = 0; i < S; ++i) dst.w_[i] = acc[0][i];
    }

    std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace rwlab
