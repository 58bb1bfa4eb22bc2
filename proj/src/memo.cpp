#include "spikeplan/memo.hpp"

#include <algorithm>

namespace spikeplan {

namespace {
constexpr std::uint32_t kNone = 0;
} // namespace

std::uint32_t SetTrie::child(std::uint32_t node, Key key) const {
    const auto &c = nodes_[node].children;
    auto it = std::lower_bound(c.begin(), c.end(), key,
                               [](const auto &entry, Key k) { return entry.first < k; });
    return it != c.end() && it->first == key ? it->second : kNone;
}

bool SetTrie::insert(std::span<const Key> set) {
    std::uint32_t node = 0;
    for (Key k : set) {
        auto &c = nodes_[node].children;
        auto it = std::lower_bound(c.begin(), c.end(), k,
                                   [](const auto &entry, Key key) { return entry.first < key; });
        if (it != c.end() && it->first == k) {
            node = it->second;
            continue;
        }
        const auto fresh = static_cast<std::uint32_t>(nodes_.size());
        c.insert(it, {k, fresh});
        nodes_.emplace_back(); // invalidates c
        node = fresh;
    }
    if (nodes_[node].terminal)
        return false;
    nodes_[node].terminal = true;
    ++count_;
    return true;
}

bool SetTrie::subset_from(std::uint32_t node, std::span<const Key> query, std::size_t pos) const {
    if (nodes_[node].terminal)
        return true;
    const auto &c = nodes_[node].children;
    if (c.empty())
        return false;
    const Key largest = c.back().first;
    for (std::size_t i = pos; i < query.size() && query[i] <= largest; ++i) {
        const std::uint32_t next = child(node, query[i]);
        if (next != kNone && subset_from(next, query, i + 1))
            return true;
    }
    return false;
}

bool SetTrie::contains_subset_of(std::span<const Key> query) const {
    return subset_from(0, query, 0);
}

bool SetTrie::contains_exact(std::span<const Key> set) const {
    std::uint32_t node = 0;
    for (Key k : set) {
        node = child(node, k);
        if (node == kNone)
            return false;
    }
    return nodes_[node].terminal;
}

void SetTrie::clear() {
    nodes_.assign(1, Node{});
    count_ = 0;
}

bool MemoStore::insert(std::size_t layer, std::span<const SetTrie::Key> set) {
    if (layer >= layers_.size())
        layers_.resize(layer + 1);
    return layers_[layer].insert(set);
}

bool MemoStore::lookup(std::size_t layer, std::span<const SetTrie::Key> goals) const {
    return layer < layers_.size() && layers_[layer].contains_subset_of(goals);
}

bool MemoStore::contains_exact(std::size_t layer, std::span<const SetTrie::Key> set) const {
    return layer < layers_.size() && layers_[layer].contains_exact(set);
}

std::size_t MemoStore::count(std::size_t layer) const {
    return layer < layers_.size() ? layers_[layer].size() : 0;
}

std::size_t MemoStore::total() const {
    std::size_t n = 0;
    for (const auto &t : layers_)
        n += t.size();
    return n;
}

} // namespace spikeplan
