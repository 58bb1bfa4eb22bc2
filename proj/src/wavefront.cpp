#include "spikeplan/wavefront.hpp"

namespace spikeplan {

double candidate_score(double penetration_weight, double fragment_weight,
                       std::size_t penetration, std::size_t generation) {
    return penetration_weight * static_cast<double>(penetration) -
           fragment_weight * static_cast<double>(generation);
}

CandidateQueue::CandidateQueue(bool heuristic, double penetration_weight, double fragment_weight)
    : heuristic_(heuristic), pw_(penetration_weight), fw_(fragment_weight) {}

void CandidateQueue::seal(const GoalSet &goals) { seen_.insert(goals); }

bool CandidateQueue::covered(const GoalSet &goals) const { return seen_.contains_subset_of(goals); }

bool CandidateQueue::admit(QueuedCandidate c) {
    if (covered(c.goals))
        return false;
    seen_.insert(c.goals);
    c.seq = seq_++;
    c.score = candidate_score(pw_, fw_, c.penetration, c.generation);
    if (heuristic_)
        scored_.push(std::move(c));
    else
        fifo_.push_back(std::move(c));
    return true;
}

QueuedCandidate CandidateQueue::pop() {
    QueuedCandidate c;
    if (heuristic_) {
        c = scored_.top();
        scored_.pop();
    } else {
        c = std::move(fifo_.front());
        fifo_.pop_front();
    }
    return c;
}

} // namespace spikeplan
