#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace spikeplan {

/*
  Trie of ascending index sequences. A lookup walks the query once per trie
  path, skipping query elements that do not match any child, so a stored set
  is found whenever it is a subset of the query.
*/
class SetTrie {
public:
    using Key = std::uint32_t;

    SetTrie() : nodes_(1) {}

    // Returns false if the exact set was already stored.
    bool insert(std::span<const Key> set);
    bool contains_subset_of(std::span<const Key> query) const;
    bool contains_exact(std::span<const Key> set) const;
    std::size_t size() const { return count_; }
    void clear();

private:
    struct Node {
        std::vector<std::pair<Key, std::uint32_t>> children; // sorted by key
        bool terminal = false;
    };

    std::uint32_t child(std::uint32_t node, Key key) const;
    bool subset_from(std::uint32_t node, std::span<const Key> query, std::size_t pos) const;

    std::vector<Node> nodes_;
    std::size_t count_ = 0;
};

// One trie per graph layer.
class MemoStore {
public:
    bool insert(std::size_t layer, std::span<const SetTrie::Key> set);
    bool lookup(std::size_t layer, std::span<const SetTrie::Key> goals) const;
    bool contains_exact(std::size_t layer, std::span<const SetTrie::Key> set) const;
    std::size_t count(std::size_t layer) const;
    std::size_t total() const;

private:
    std::vector<SetTrie> layers_;
};

} // namespace spikeplan
