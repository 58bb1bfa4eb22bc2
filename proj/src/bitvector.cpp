#include "spikeplan/bitvector.hpp"

#include <algorithm>
#include <bit>

namespace spikeplan {

SpikeVector::SpikeVector(std::size_t capacity, std::size_t max_size)
    : capacity_(capacity) {
    if (capacity == 0)
        throw std::invalid_argument("spike vector capacity must be positive");
    if (capacity > max_size)
        throw CapacityError(CapacityError::Kind::MaxSize,
                            "spike vector capacity " + std::to_string(capacity) +
                                " exceeds MaxSize " + std::to_string(max_size));
    words_.assign((capacity + kWordBits - 1) / kWordBits, 0);
}

void SpikeVector::check_index(std::size_t index) const {
    if (index >= capacity_)
        throw std::out_of_range("bit index " + std::to_string(index) +
                                " out of range for capacity " + std::to_string(capacity_));
}

void SpikeVector::check_same_capacity(const SpikeVector &other) const {
    if (capacity_ != other.capacity_)
        throw std::invalid_argument("spike vector capacity mismatch: " +
                                    std::to_string(capacity_) + " vs " +
                                    std::to_string(other.capacity_));
}

void SpikeVector::trim() {
    while (used_ > 0 && words_[used_ - 1] == 0)
        --used_;
}

void SpikeVector::set_bit(std::size_t index) {
    check_index(index);
    set_unchecked(index);
}

void SpikeVector::reset_bit(std::size_t index) {
    check_index(index);
    const std::size_t w = index / kWordBits;
    if (w >= used_)
        return;
    words_[w] &= ~(Word{1} << (index % kWordBits));
    trim();
}

bool SpikeVector::test_bit(std::size_t index) const {
    check_index(index);
    return test_unchecked(index);
}

void SpikeVector::or_into(const SpikeVector &other) {
    check_same_capacity(other);
    for (std::size_t w = 0; w < other.used_; ++w)
        words_[w] |= other.words_[w];
    used_ = std::max(used_, other.used_);
}

void SpikeVector::and_into(const SpikeVector &other) {
    check_same_capacity(other);
    const std::size_t n = std::min(used_, other.used_);
    for (std::size_t w = 0; w < n; ++w)
        words_[w] &= other.words_[w];
    for (std::size_t w = n; w < used_; ++w)
        words_[w] = 0;
    used_ = n;
    trim();
}

void SpikeVector::clear() {
    std::fill(words_.begin(), words_.begin() + static_cast<std::ptrdiff_t>(used_), 0);
    used_ = 0;
}

bool SpikeVector::is_zero() const {
    for (std::size_t w = 0; w < used_; ++w)
        if (words_[w])
            return false;
    return true;
}

bool SpikeVector::intersects(const SpikeVector &other) const {
    check_same_capacity(other);
    const std::size_t n = std::min(used_, other.used_);
    for (std::size_t w = 0; w < n; ++w)
        if (words_[w] & other.words_[w])
            return true;
    return false;
}

bool SpikeVector::is_subset_of(const SpikeVector &other) const {
    check_same_capacity(other);
    for (std::size_t w = 0; w < used_; ++w) {
        const Word theirs = w < other.used_ ? other.words_[w] : 0;
        if (words_[w] & ~theirs)
            return false;
    }
    return true;
}

std::size_t SpikeVector::popcount() const {
    std::size_t n = 0;
    for (std::size_t w = 0; w < used_; ++w)
        n += static_cast<std::size_t>(std::popcount(words_[w]));
    return n;
}

std::vector<std::size_t> SpikeVector::set_indices() const {
    std::vector<std::size_t> out;
    out.reserve(popcount());
    for_each_set([&](std::size_t i) { out.push_back(i); });
    return out;
}

bool operator==(const SpikeVector &a, const SpikeVector &b) {
    if (a.capacity_ != b.capacity_)
        return false;
    const std::size_t n = std::max(a.used_, b.used_);
    for (std::size_t w = 0; w < n; ++w) {
        const auto x = w < a.used_ ? a.words_[w] : 0;
        const auto y = w < b.used_ ? b.words_[w] : 0;
        if (x != y)
            return false;
    }
    return true;
}

std::string SpikeVector::to_string() const {
    std::string s;
    s.reserve(capacity_);
    for (std::size_t i = 0; i < capacity_; ++i)
        s.push_back(test_unchecked(i) ? '1' : '0');
    return s;
}

SpikeVector operator|(SpikeVector a, const SpikeVector &b) {
    a.or_into(b);
    return a;
}

SpikeVector operator&(SpikeVector a, const SpikeVector &b) {
    a.and_into(b);
    return a;
}

} // namespace spikeplan
