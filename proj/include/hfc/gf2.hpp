#pragma once

#include <cstdint>
#include <vector>

namespace hfc::hom {

/// Bit-packed GF(2) row vector.
class Gf2Vec {
  public:
    Gf2Vec() = default;
    explicit Gf2Vec(int bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

    int size() const { return bits_; }
    bool get(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(int i, bool v) {
        uint64_t m = uint64_t(1) << (i & 63);
        if (v)
            words_[i >> 6] |= m;
        else
            words_[i >> 6] &= ~m;
    }
    void flip(int i) { words_[i >> 6] ^= uint64_t(1) << (i & 63); }
    void operator^=(const Gf2Vec& o) {
        for (size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    }
    bool any() const {
        for (uint64_t w : words_)
            if (w) return true;
        return false;
    }
    int popcount() const;
    int lowest_set() const; // -1 if zero
    bool operator==(const Gf2Vec& o) const { return words_ == o.words_; }

  private:
    int bits_ = 0;
    std::vector<uint64_t> words_;
};

/// Dense bit-packed GF(2) matrix with rank/solve via Gaussian elimination.
class Gf2Matrix {
  public:
    Gf2Matrix() = default;
    Gf2Matrix(int rows, int cols) : cols_(cols), rows_(rows, Gf2Vec(cols)) {}

    int rows() const { return (int)rows_.size(); }
    int cols() const { return cols_; }
    Gf2Vec& row(int r) { return rows_[r]; }
    const Gf2Vec& row(int r) const { return rows_[r]; }
    void add_row(Gf2Vec v) { rows_.push_back(std::move(v)); }

    int rank() const;

  private:
    int cols_ = 0;
    std::vector<Gf2Vec> rows_;
};

/// Incremental row-echelon basis; supports "does this vector extend the span".
class Gf2Span {
  public:
    explicit Gf2Span(int cols) : cols_(cols) {}

    /// Reduce v against the basis in place; returns the residue.
    Gf2Vec reduce(Gf2Vec v) const;
    /// Add v to the span; returns true if the rank grew.
    bool add(Gf2Vec v);
    bool contains(const Gf2Vec& v) const { return !reduce(v).any(); }
    int rank() const { return (int)basis_.size(); }
    int cols() const { return cols_; }

  private:
    int cols_;
    std::vector<std::pair<int, Gf2Vec>> basis_; // (pivot, reduced row), sorted by pivot
};

} // namespace hfc::hom
