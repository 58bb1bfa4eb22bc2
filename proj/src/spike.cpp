#include "spikeplan/spike.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace spikeplan {

Spike::Spike(const strips::GroundTask &task, SpikeOptions options)
    : task_(task), options_(options) {
    // Every fact the pool can mention, and one no-op per fact, bound the arrays.
    fact_capacity_ = std::max<std::size_t>(task.facts.size(), 1);
    action_capacity_ = std::max<std::size_t>(task.actions.size() + task.facts.size(), 1);
    if (fact_capacity_ > options.max_size)
        throw CapacityError(CapacityError::Kind::MaxSize,
                            "fact spike needs " + std::to_string(fact_capacity_) +
                                " bits, MaxSize is " + std::to_string(options.max_size));
    if (action_capacity_ > options.max_size)
        throw CapacityError(CapacityError::Kind::MaxSize,
                            "action spike needs " + std::to_string(action_capacity_) +
                                " bits, MaxSize is " + std::to_string(options.max_size));

    fact_of_id_.assign(task.facts.size(), -1);
    waiting_deleters_.resize(task.facts.size());
    changed_acts_ = SpikeVector(action_capacity_, options.max_size);

    for (strips::FactId id : task.initial)
        if (fact_of_id_[id] < 0)
            add_fact(id, 0);
    for (auto &f : facts_)
        f.levels.push_back({SpikeVector(fact_capacity_, options_.max_size),
                            SpikeVector(action_capacity_, options_.max_size)});
    fact_ends_.push_back(facts_.size());
    action_ends_.push_back(0);
    permanent_pair_count_.push_back(0);
    fact_pair_count_.push_back(0);

    pending_.resize(task.actions.size());
    for (std::size_t i = 0; i < pending_.size(); ++i)
        pending_[i] = i;

    RankSummary zero;
    zero.new_facts = facts_.size();
    summaries_.push_back(zero);
}

std::optional<std::size_t> Spike::fact_index(strips::FactId id) const {
    if (id >= fact_of_id_.size() || fact_of_id_[id] < 0)
        return std::nullopt;
    return static_cast<std::size_t>(fact_of_id_[id]);
}

std::size_t Spike::add_fact(strips::FactId id, std::size_t rank) {
    const std::size_t index = facts_.size();
    FactHeader h;
    h.name = id;
    h.index = index;
    h.bit_mask = SpikeVector(fact_capacity_, options_.max_size);
    h.bit_mask.set_bit(index);
    h.consumers = SpikeVector(action_capacity_, options_.max_size);
    h.first_rank = rank;
    facts_.push_back(std::move(h));
    fact_of_id_[id] = static_cast<long>(index);
    for (std::size_t deleter : waiting_deleters_[id])
        actions_[deleter].dels.set_bit(index);
    waiting_deleters_[id].clear();
    return index;
}

std::size_t Spike::add_noop(std::size_t fact, std::size_t rank) {
    const std::size_t index = actions_.size();
    ActionHeader h;
    h.index = index;
    h.bit_mask = SpikeVector(action_capacity_, options_.max_size);
    h.bit_mask.set_bit(index);
    h.is_noop = true;
    h.precs = facts_[fact].bit_mask;
    h.adds = facts_[fact].bit_mask;
    h.dels = SpikeVector(fact_capacity_, options_.max_size);
    h.prec_list = {fact};
    h.add_list = {fact};
    h.first_rank = rank;
    actions_.push_back(std::move(h));
    permanent_.emplace_back(action_capacity_, options_.max_size);
    facts_[fact].achieving_noop = index;
    facts_[fact].consumers.set_bit(index);
    return index;
}

std::size_t Spike::enact(std::size_t pool_index, std::size_t rank) {
    const strips::GroundAction &ga = task_.actions[pool_index];
    const std::size_t index = actions_.size();
    ActionHeader h;
    h.pool_index = pool_index;
    h.index = index;
    h.bit_mask = SpikeVector(action_capacity_, options_.max_size);
    h.bit_mask.set_bit(index);
    h.precs = SpikeVector(fact_capacity_, options_.max_size);
    h.adds = SpikeVector(fact_capacity_, options_.max_size);
    h.dels = SpikeVector(fact_capacity_, options_.max_size);
    h.first_rank = rank;
    for (strips::FactId p : ga.pre) {
        const auto f = static_cast<std::size_t>(fact_of_id_[p]);
        h.precs.set_bit(f);
        h.prec_list.push_back(f);
        facts_[f].consumers.set_bit(index);
    }
    std::sort(h.prec_list.begin(), h.prec_list.end());
    actions_.push_back(std::move(h));
    permanent_.emplace_back(action_capacity_, options_.max_size);

    for (strips::FactId d : ga.del) {
        if (fact_of_id_[d] >= 0)
            actions_[index].dels.set_bit(static_cast<std::size_t>(fact_of_id_[d]));
        else
            waiting_deleters_[d].push_back(index);
    }
    for (strips::FactId a : ga.add) {
        const std::size_t f =
            fact_of_id_[a] >= 0 ? static_cast<std::size_t>(fact_of_id_[a]) : add_fact(a, rank);
        actions_[index].adds.set_bit(f);
        actions_[index].add_list.push_back(f);
    }
    return index;
}

RankSummary Spike::extend_rank(bool past_fix_point) {
    if (fix_point_ && !past_fix_point)
        throw std::logic_error("extend_rank called after the fix point");
    const std::size_t prev = newest_rank();
    const std::size_t rank = prev + 1;
    const std::size_t prev_facts = fact_end(prev);
    const std::size_t first_new = actions_.size();

    RankSummary summary;
    summary.rank = rank;

    for (std::size_t f = 0; f < prev_facts; ++f)
        if (!facts_[f].achieving_noop) {
            add_noop(f, rank);
            ++summary.new_noops;
        }

    std::vector<std::size_t> still_pending;
    still_pending.reserve(pending_.size());
    std::vector<std::size_t> precs;
    for (std::size_t p : pending_) {
        const strips::GroundAction &ga = task_.actions[p];
        precs.clear();
        bool present = true;
        for (strips::FactId id : ga.pre) {
            const long f = fact_of_id_[id];
            if (f < 0 || static_cast<std::size_t>(f) >= prev_facts) {
                present = false;
                break;
            }
            precs.push_back(static_cast<std::size_t>(f));
        }
        if (present && !self_mutex(precs, prev))
            enact(p, rank);
        else
            still_pending.push_back(p);
    }
    pending_.swap(still_pending);

    action_ends_.push_back(actions_.size());
    fact_ends_.push_back(facts_.size());
    summary.new_actions = actions_.size() - first_new;
    summary.new_facts = facts_.size() - prev_facts;

    build_action_mutexes(rank, first_new);
    build_achievers(rank, first_new);
    const bool lost_any = build_fact_mutexes(rank);

    summary.permanent_pairs = permanent_pair_count_[rank];
    summary.temporary_pairs = temporary_pairs_.size();
    summary.fact_mutex_pairs = fact_pair_count_[rank];

    if (!fix_point_ && summary.new_facts == 0 && !lost_any &&
        fact_pair_count_[rank] == fact_pair_count_[prev]) {
        fix_point_ = prev;
        summary.fix_point = true;
    }
    summaries_.push_back(summary);
    return summary;
}

SpikeVector Spike::precondition_mutexes(std::size_t action, std::size_t fact_rank) const {
    SpikeVector acc(fact_capacity_, options_.max_size);
    for (std::size_t p : actions_[action].prec_list)
        acc.or_into(fmv(p, fact_rank));
    return acc;
}

void Spike::set_action_pair(std::size_t a, std::size_t b, std::size_t rank) {
    actions_[a].levels[rank - actions_[a].first_rank].mutex.set_unchecked(b);
    actions_[b].levels[rank - actions_[b].first_rank].mutex.set_unchecked(a);
}

void Spike::build_action_mutexes(std::size_t rank, std::size_t first_new) {
    const std::size_t prev = rank - 1;
    const std::size_t end = actions_.size();
    for (std::size_t a = 0; a < end; ++a)
        actions_[a].levels.push_back({permanent_[a], {}});

    // Or of the preconditions' fact mutex vectors at the previous fact rank.
    std::vector<SpikeVector> pre_mutex;
    pre_mutex.reserve(end);
    for (std::size_t a = 0; a < end; ++a)
        pre_mutex.push_back(precondition_mutexes(a, prev));

    std::vector<std::pair<std::size_t, std::size_t>> surviving;
    surviving.reserve(temporary_pairs_.size());
    for (const auto &[a, b] : temporary_pairs_) {
        bool still = true;
        if (!options_.changed_acts || changed_acts_.test_unchecked(a) ||
            changed_acts_.test_unchecked(b)) {
            ++counters_.retests;
            still = pre_mutex[a].intersects(actions_[b].precs);
        } else {
            ++counters_.retests_avoided;
        }
        if (still) {
            surviving.emplace_back(a, b);
            set_action_pair(a, b, rank);
        }
    }

    std::size_t permanent_pairs = permanent_pair_count_[prev];
    for (std::size_t n = first_new; n < end; ++n) {
        for (std::size_t j = 0; j < n; ++j) {
            ++counters_.permanent_tests;
            if (perm_mutex(n, j)) {
                permanent_[n].set_unchecked(j);
                permanent_[j].set_unchecked(n);
                set_action_pair(n, j, rank);
                ++permanent_pairs;
                continue;
            }
            ++counters_.temporary_tests;
            if (pre_mutex[j].intersects(actions_[n].precs)) {
                surviving.emplace_back(j, n);
                set_action_pair(j, n, rank);
            }
        }
    }
    temporary_pairs_.swap(surviving);
    permanent_pair_count_.push_back(permanent_pairs);

    for (std::size_t a = 0; a < end; ++a) {
        ActionLevel &level = actions_[a].levels.back();
        level.mutex_list = level.mutex.set_indices();
    }
}

void Spike::build_achievers(std::size_t rank, std::size_t first_new_action) {
    const std::size_t prev_facts = fact_end(rank - 1);
    for (std::size_t f = 0; f < facts_.size(); ++f) {
        FactHeader &h = facts_[f];
        SpikeVector mutex(fact_capacity_, options_.max_size);
        if (f < prev_facts)
            h.levels.push_back({std::move(mutex), h.levels.back().achievers});
        else
            h.levels.push_back({std::move(mutex), SpikeVector(action_capacity_, options_.max_size)});
    }
    for (std::size_t a = first_new_action; a < actions_.size(); ++a)
        for (std::size_t f : actions_[a].add_list)
            facts_[f].levels.back().achievers.set_unchecked(a);
}

bool Spike::build_fact_mutexes(std::size_t rank) {
    const std::size_t prev = rank - 1;
    const std::size_t prev_facts = fact_end(prev);
    const std::size_t end = facts_.size();

    std::vector<std::optional<SpikeVector>> all_mutex(end);
    auto all_mutex_of = [&](std::size_t f) -> const SpikeVector & {
        if (!all_mutex[f]) {
            const SpikeVector &av = achievers(f, rank);
            SpikeVector acc;
            bool first = true;
            av.for_each_set([&](std::size_t a) {
                if (first) {
                    acc = amv(a, rank);
                    first = false;
                } else {
                    acc.and_into(amv(a, rank));
                }
            });
            if (first)
                acc = SpikeVector(action_capacity_, options_.max_size);
            all_mutex[f] = std::move(acc);
        }
        return *all_mutex[f];
    };
    auto test = [&](std::size_t f, std::size_t g) {
        ++counters_.fact_tests;
        return achievers(g, rank).is_subset_of(all_mutex_of(f)) && !achievers(g, rank).is_zero();
    };
    auto mark = [&](std::size_t f, std::size_t g) {
        facts_[f].levels.back().mutex.set_unchecked(g);
        facts_[g].levels.back().mutex.set_unchecked(f);
    };

    std::size_t pairs = 0;
    // Previously mutex pairs are retested; previously non-mutex pairs stay so.
    for (std::size_t f = 0; f < prev_facts; ++f)
        fmv(f, prev).for_each_set([&](std::size_t g) {
            if (g > f && test(f, g)) {
                mark(f, g);
                ++pairs;
            }
        });
    for (std::size_t f = prev_facts; f < end; ++f)
        for (std::size_t g = 0; g < f; ++g)
            if (test(f, g)) {
                mark(f, g);
                ++pairs;
            }
    fact_pair_count_.push_back(pairs);

    changed_acts_.clear();
    bool lost_any = false;
    for (std::size_t f = 0; f < prev_facts; ++f)
        if (!fmv(f, prev).is_subset_of(fmv(f, rank))) {
            lost_any = true;
            changed_acts_.or_into(facts_[f].consumers);
        }
    return lost_any;
}

const SpikeVector &Spike::fmv(std::size_t fact, std::size_t rank) const {
    const FactHeader &h = facts_.at(fact);
    if (rank < h.first_rank || rank - h.first_rank >= h.levels.size())
        throw std::out_of_range("fact " + std::to_string(fact) + " has no level at rank " +
                                std::to_string(rank));
    return h.levels[rank - h.first_rank].mutex;
}

const SpikeVector &Spike::achievers(std::size_t fact, std::size_t rank) const {
    const FactHeader &h = facts_.at(fact);
    if (rank < h.first_rank || rank - h.first_rank >= h.levels.size())
        throw std::out_of_range("fact " + std::to_string(fact) + " has no level at rank " +
                                std::to_string(rank));
    return h.levels[rank - h.first_rank].achievers;
}

const SpikeVector &Spike::amv(std::size_t action, std::size_t rank) const {
    const ActionHeader &h = actions_.at(action);
    if (rank < h.first_rank || rank - h.first_rank >= h.levels.size())
        throw std::out_of_range("action " + std::to_string(action) + " has no level at rank " +
                                std::to_string(rank));
    return h.levels[rank - h.first_rank].mutex;
}

const std::vector<std::size_t> &Spike::mutex_list(std::size_t action, std::size_t rank) const {
    const ActionHeader &h = actions_.at(action);
    if (rank < h.first_rank || rank - h.first_rank >= h.levels.size())
        throw std::out_of_range("action " + std::to_string(action) + " has no level at rank " +
                                std::to_string(rank));
    return h.levels[rank - h.first_rank].mutex_list;
}

bool Spike::facts_mutex(std::size_t f, std::size_t g, std::size_t rank) const {
    return fmv(f, rank).test_bit(g);
}

bool Spike::actions_mutex(std::size_t a, std::size_t b, std::size_t rank) const {
    return amv(a, rank).test_bit(b);
}

bool Spike::self_mutex(std::span<const std::size_t> precs, std::size_t fact_rank) const {
    if (precs.size() < 2)
        return false;
    SpikeVector acc(fact_capacity_, options_.max_size);
    SpikeVector prec_vec(fact_capacity_, options_.max_size);
    for (std::size_t p : precs) {
        acc.or_into(fmv(p, fact_rank));
        prec_vec.set_unchecked(p);
    }
    return acc.intersects(prec_vec);
}

bool Spike::self_mutex(std::size_t action, std::size_t fact_rank) const {
    return self_mutex(actions_.at(action).prec_list, fact_rank);
}

bool Spike::perm_mutex(std::size_t a, std::size_t b) const {
    const ActionHeader &x = actions_.at(a);
    const ActionHeader &y = actions_.at(b);
    return x.dels.intersects(y.precs) || x.dels.intersects(y.adds) ||
           y.dels.intersects(x.precs) || y.dels.intersects(x.adds);
}

bool Spike::temp_mutex(std::size_t a, std::size_t b, std::size_t fact_rank) const {
    return precondition_mutexes(a, fact_rank).intersects(actions_.at(b).precs);
}

bool Spike::fact_mutex(std::size_t f, std::size_t g, std::size_t rank) const {
    SpikeVector all_mutex;
    bool first = true;
    achievers(f, rank).for_each_set([&](std::size_t a) {
        if (first) {
            all_mutex = amv(a, rank);
            first = false;
        } else {
            all_mutex.and_into(amv(a, rank));
        }
    });
    const SpikeVector &vec_g = achievers(g, rank);
    if (first || vec_g.is_zero())
        return false;
    return vec_g.is_subset_of(all_mutex);
}

bool Spike::goals_open(std::span<const strips::FactId> goals) const {
    return goals_open(goals, newest_rank());
}

bool Spike::goals_open(std::span<const strips::FactId> goals, std::size_t rank) const {
    const std::size_t end = fact_end(rank);
    std::vector<std::size_t> idx;
    for (strips::FactId g : goals) {
        const auto f = fact_index(g);
        if (!f || *f >= end)
            return false;
        idx.push_back(*f);
    }
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j)
            if (fmv(idx[i], rank).test_unchecked(idx[j]))
                return false;
    return true;
}

std::size_t Spike::fact_mutex_pairs(std::size_t rank) const {
    return fact_pair_count_.at(rank);
}

std::size_t Spike::action_mutex_pairs(std::size_t rank) const {
    std::size_t bits = 0;
    for (std::size_t a = 0; a < action_end(rank); ++a)
        bits += amv(a, rank).popcount();
    return bits / 2;
}

std::string Spike::fact_name(std::size_t fact) const {
    return strips::to_string(task_.facts.atom(facts_.at(fact).name));
}

std::string Spike::action_name(std::size_t action) const {
    const ActionHeader &h = actions_.at(action);
    if (h.is_noop)
        return "noop" + fact_name(h.prec_list.front());
    return strips::to_string(task_.actions[*h.pool_index]);
}

std::string Spike::dump() const {
    std::ostringstream out;
    for (std::size_t r = 0; r <= newest_rank(); ++r) {
        out << "rank " << r << "\n";
        if (r > 0) {
            out << "  actions\n";
            for (std::size_t a = 0; a < action_end(r); ++a)
                out << "    " << a << (a >= action_end(r - 1) ? " + " : "   ") << action_name(a)
                    << "\n";
            out << "  action mutex\n";
            for (std::size_t a = 0; a < action_end(r); ++a)
                for (std::size_t b : mutex_list(a, r))
                    if (b > a)
                        out << "    " << a << " " << b
                            << (permanent_[a].test_unchecked(b) ? " permanent" : " temporary")
                            << "\n";
        }
        out << "  facts\n";
        for (std::size_t f = 0; f < fact_end(r); ++f)
            out << "    " << f << (r > 0 && f >= fact_end(r - 1) ? " + " : "   ") << fact_name(f)
                << "\n";
        out << "  fact mutex\n";
        for (std::size_t f = 0; f < fact_end(r); ++f)
            fmv(f, r).for_each_set([&](std::size_t g) {
                if (g > f)
                    out << "    " << f << " " << g << "\n";
            });
    }
    if (fix_point_)
        out << "fix point " << *fix_point_ << ", buffer " << *fix_point_ + 1 << "\n";
    return out.str();
}

} // namespace spikeplan
