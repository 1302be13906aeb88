#include "hfc/gf2.hpp"

#include <bit>

namespace hfc::hom {

int Gf2Vec::popcount() const {
    int n = 0;
    for (uint64_t w : words_) n += std::popcount(w);
    return n;
}

int Gf2Vec::lowest_set() const {
    for (size_t w = 0; w < words_.size(); ++w)
        if (words_[w]) return (int)(w * 64) + std::countr_zero(words_[w]);
    return -1;
}

int Gf2Matrix::rank() const {
    Gf2Span span(cols_);
    for (const auto& r : rows_) span.add(r);
    return span.rank();
}

Gf2Vec Gf2Span::reduce(Gf2Vec v) const {
    for (const auto& [pivot, row] : basis_) {
        if (v.get(pivot)) v ^= row;
    }
    return v;
}

bool Gf2Span::add(Gf2Vec v) {
    v = reduce(std::move(v));
    int pivot = v.lowest_set();
    if (pivot < 0) return false;
    auto it = basis_.begin();
    while (it != basis_.end() && it->first < pivot) ++it;
    basis_.insert(it, {pivot, std::move(v)});
    return true;
}

} // namespace hfc::hom
