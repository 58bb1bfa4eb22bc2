#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace spikeplan {

/// Default upper bound on the number of bits a single spike vector may hold.
inline constexpr std::size_t kDefaultMaxSize = std::size_t{1} << 20;

class CapacityError : public std::runtime_error {
public:
    enum class Kind { MaxSize, RankCap, CandidateCap, PoolCap };

    CapacityError(Kind kind, const std::string &what)
        : std::runtime_error(what), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/*
  Fixed-capacity bit vector. Storage for the full capacity is allocated once
  at creation; the vector tracks how many leading words are in use so that
  the logical operations can skip the zero tail. Bits at or beyond the
  in-use word count are always zero.
*/
class SpikeVector {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    SpikeVector() = default;
    explicit SpikeVector(std::size_t capacity, std::size_t max_size = kDefaultMaxSize);

    std::size_t capacity() const { return capacity_; }
    std::size_t words_in_use() const { return used_; }

    void set_bit(std::size_t index);
    void reset_bit(std::size_t index);
    bool test_bit(std::size_t index) const;

    // Unchecked variants for inner loops; callers guarantee index < capacity.
    void set_unchecked(std::size_t index) {
        const std::size_t w = index / kWordBits;
        words_[w] |= Word{1} << (index % kWordBits);
        if (w >= used_)
            used_ = w + 1;
    }
    bool test_unchecked(std::size_t index) const {
        const std::size_t w = index / kWordBits;
        return w < used_ && ((words_[w] >> (index % kWordBits)) & 1U);
    }

    void or_into(const SpikeVector &other);
    void and_into(const SpikeVector &other);
    void clear();

    bool is_zero() const;
    bool intersects(const SpikeVector &other) const;
    // True iff every bit of *this is also set in other.
    bool is_subset_of(const SpikeVector &other) const;
    std::size_t popcount() const;

    std::vector<std::size_t> set_indices() const;

    template <typename Fn>
    void for_each_set(Fn &&fn) const {
        for (std::size_t w = 0; w < used_; ++w) {
            Word bits = words_[w];
            while (bits) {
                const int tz = __builtin_ctzll(bits);
                fn(w * kWordBits + static_cast<std::size_t>(tz));
                bits &= bits - 1;
            }
        }
    }

    friend bool operator==(const SpikeVector &a, const SpikeVector &b);

    std::string to_string() const;

private:
    void check_index(std::size_t index) const;
    void check_same_capacity(const SpikeVector &other) const;
    void trim();

    std::size_t capacity_ = 0;
    std::size_t used_ = 0;
    std::vector<Word> words_;
};

SpikeVector operator|(SpikeVector a, const SpikeVector &b);
SpikeVector operator&(SpikeVector a, const SpikeVector &b);

} // namespace spikeplan
