#pragma once

#include "spikeplan/memo.hpp"
#include "spikeplan/search.hpp"

#include <cstddef>
#include <cstdint>
#include <deque>
#include <queue>
#include <vector>

namespace spikeplan {

struct QueuedCandidate {
    GoalSet goals;
    std::int64_t fragment = -1;  // arena index of the first step after the goals hold
    std::size_t generation = 0;
    std::size_t penetration = 0;
    std::size_t seq = 0;
    double score = 0;
};

double candidate_score(double penetration_weight, double fragment_weight,
                       std::size_t penetration, std::size_t generation);

// Admitted goal sets, queued FIFO or by score (ties by admission order).
class CandidateQueue {
public:
    CandidateQueue(bool heuristic, double penetration_weight, double fragment_weight);

    // Marks goals as seen without queueing them.
    void seal(const GoalSet &goals);
    // A stored set is a subset of goals.
    bool covered(const GoalSet &goals) const;
    // Skips covered sets. Assigns seq and score otherwise.
    bool admit(QueuedCandidate candidate);

    QueuedCandidate pop();
    bool empty() const { return size() == 0; }
    std::size_t size() const { return heuristic_ ? scored_.size() : fifo_.size(); }
    std::size_t admitted() const { return seq_; }

private:
    struct Order {
        bool operator()(const QueuedCandidate &a, const QueuedCandidate &b) const {
            if (a.score != b.score)
                return a.score < b.score;
            return a.seq > b.seq;
        }
    };

    bool heuristic_;
    double pw_, fw_;
    SetTrie seen_;
    std::deque<QueuedCandidate> fifo_;
    std::priority_queue<QueuedCandidate, std::vector<QueuedCandidate>, Order> scored_;
    std::size_t seq_ = 0;
};

} // namespace spikeplan
