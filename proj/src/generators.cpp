#include "spikeplan/generators.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

namespace spikeplan::gen {

namespace {

std::string join(const std::vector<std::string> &v) {
    std::string s;
    for (const auto &x : v)
        s += (s.empty() ? "" : " ") + x;
    return s;
}

std::vector<std::string> numbered(const std::string &prefix, int from, int to) {
    std::vector<std::string> v;
    for (int i = from; i <= to; ++i)
        v.push_back(prefix + std::to_string(i));
    return v;
}

void require(bool ok, const std::string &what) {
    if (!ok)
        throw std::invalid_argument(what);
}

} // namespace

Instance toh(int n) {
    require(n >= 1, "toh needs at least one disc");
    const auto discs = numbered("d", 1, n); // d1 is the smallest
    const std::vector<std::string> pegs = {"p1", "p2", "p3"};

    Instance inst;
    inst.name = "toh-" + std::to_string(n);
    inst.domain = R"((define (domain hanoi)
  (:requirements :strips)
  (:predicates (on ?x ?y) (clear ?x) (smaller ?x ?y))
  (:action move
    :parameters (?disc ?from ?to)
    :precondition (and (smaller ?to ?disc) (on ?disc ?from) (clear ?disc) (clear ?to))
    :effect (and (clear ?from) (on ?disc ?to) (not (on ?disc ?from)) (not (clear ?to)))))
)";
    std::ostringstream p;
    p << "(define (problem " << inst.name << ")\n  (:domain hanoi)\n";
    p << "  (:objects " << join(discs) << " " << join(pegs) << ")\n  (:init\n";
    for (int i = 0; i < n; ++i) {
        for (const auto &peg : pegs)
            p << "    (smaller " << peg << " " << discs[i] << ")\n";
        for (int j = i + 1; j < n; ++j)
            p << "    (smaller " << discs[j] << " " << discs[i] << ")\n";
    }
    for (int i = 0; i + 1 < n; ++i)
        p << "    (on " << discs[i] << " " << discs[i + 1] << ")\n";
    p << "    (on " << discs[n - 1] << " p1)\n";
    p << "    (clear " << discs[0] << ") (clear p2) (clear p3))\n  (:goal (and";
    for (int i = 0; i + 1 < n; ++i)
        p << " (on " << discs[i] << " " << discs[i + 1] << ")";
    p << " (on " << discs[n - 1] << " p3))))\n";
    inst.problem = p.str();
    return inst;
}

Instance gripper(int n) {
    require(n >= 1, "gripper needs at least one ball");
    const auto balls = numbered("b", 1, n);

    Instance inst;
    inst.name = "gripper-" + std::to_string(n);
    inst.domain = R"((define (domain gripper)
  (:requirements :strips)
  (:predicates (room ?r) (ball ?b) (gripper ?g) (at-robby ?r) (at ?b ?r) (free ?g) (carry ?o ?g))
  (:action move
    :parameters (?from ?to)
    :precondition (and (room ?from) (room ?to) (at-robby ?from))
    :effect (and (at-robby ?to) (not (at-robby ?from))))
  (:action pick
    :parameters (?obj ?room ?gripper)
    :precondition (and (ball ?obj) (room ?room) (gripper ?gripper)
                       (at ?obj ?room) (at-robby ?room) (free ?gripper))
    :effect (and (carry ?obj ?gripper) (not (at ?obj ?room)) (not (free ?gripper))))
  (:action drop
    :parameters (?obj ?room ?gripper)
    :precondition (and (ball ?obj) (room ?room) (gripper ?gripper)
                       (carry ?obj ?gripper) (at-robby ?room))
    :effect (and (at ?obj ?room) (free ?gripper) (not (carry ?obj ?gripper)))))
)";
    std::ostringstream p;
    p << "(define (problem " << inst.name << ")\n  (:domain gripper)\n";
    p << "  (:objects ra rb " << join(balls) << " left right)\n  (:init\n";
    p << "    (room ra) (room rb) (gripper left) (gripper right)\n";
    p << "    (at-robby ra) (free left) (free right)\n";
    for (const auto &b : balls)
        p << "    (ball " << b << ") (at " << b << " ra)\n";
    p << "  )\n  (:goal (and";
    for (const auto &b : balls)
        p << " (at " << b << " rb)";
    p << ")))\n";
    inst.problem = p.str();
    return inst;
}

Instance ferry(int n) {
    require(n >= 1, "ferry needs at least one car");
    const auto cars = numbered("c", 1, n);

    Instance inst;
    inst.name = "ferry-" + std::to_string(n);
    inst.domain = R"((define (domain ferry)
  (:requirements :strips)
  (:predicates (not-eq ?x ?y) (car ?c) (place ?p) (at-ferry ?p) (at ?c ?p) (empty-ferry) (on ?c))
  (:action sail
    :parameters (?from ?to)
    :precondition (and (not-eq ?from ?to) (at-ferry ?from))
    :effect (and (at-ferry ?to) (not (at-ferry ?from))))
  (:action board
    :parameters (?car ?place)
    :precondition (and (car ?car) (place ?place) (at ?car ?place) (at-ferry ?place) (empty-ferry))
    :effect (and (on ?car) (not (at ?car ?place)) (not (empty-ferry))))
  (:action debark
    :parameters (?car ?place)
    :precondition (and (car ?car) (place ?place) (on ?car) (at-ferry ?place))
    :effect (and (at ?car ?place) (empty-ferry) (not (on ?car)))))
)";
    std::ostringstream p;
    p << "(define (problem " << inst.name << ")\n  (:domain ferry)\n";
    p << "  (:objects l1 l2 " << join(cars) << ")\n  (:init\n";
    p << "    (place l1) (place l2) (not-eq l1 l2) (not-eq l2 l1)\n";
    p << "    (at-ferry l1) (empty-ferry)\n";
    for (const auto &c : cars)
        p << "    (car " << c << ") (at " << c << " l1)\n";
    p << "  )\n  (:goal (and";
    for (const auto &c : cars)
        p << " (at " << c << " l2)";
    p << ")))\n";
    inst.problem = p.str();
    return inst;
}

Instance tsp(int n) {
    require(n >= 1, "tsp needs at least one city");
    const auto cities = numbered("c", 0, n - 1);

    Instance inst;
    inst.name = "tsp-" + std::to_string(n);
    inst.domain = R"((define (domain tsp)
  (:requirements :strips)
  (:predicates (at ?x) (visited ?x) (connected ?x ?y))
  (:action move
    :parameters (?from ?to)
    :precondition (and (at ?from) (connected ?from ?to))
    :effect (and (at ?to) (visited ?to) (not (at ?from)))))
)";
    std::ostringstream p;
    p << "(define (problem " << inst.name << ")\n  (:domain tsp)\n";
    p << "  (:objects " << join(cities) << ")\n  (:init\n    (at c0)\n";
    for (const auto &a : cities)
        for (const auto &b : cities)
            if (a != b)
                p << "    (connected " << a << " " << b << ")\n";
    p << "  )\n  (:goal (and";
    for (const auto &c : cities)
        p << " (visited " << c << ")";
    p << ")))\n";
    inst.problem = p.str();
    return inst;
}

Instance blocks_example() {
    Instance inst;
    inst.name = "blocks-2";
    inst.domain = R"((define (domain blocks)
  (:requirements :strips)
  (:predicates (on ?x ?y) (clear ?x))
  (:action puton
    :parameters (?x ?y ?z)
    :precondition (and (on ?x ?z) (clear ?x) (clear ?y))
    :effect (and (on ?x ?y) (clear ?z) (not (on ?x ?z)) (not (clear ?y)))))
)";
    inst.problem = R"((define (problem blocks-2)
  (:domain blocks)
  (:objects a b p1 p2)
  (:init (on a p1) (on b p2) (clear a) (clear b))
  (:goal (and (on a b))))
)";
    return inst;
}

Instance tokens_unsolvable() {
    Instance inst;
    inst.name = "tokens-3";
    inst.domain = R"((define (domain tokens)
  (:requirements :strips :typing)
  (:types token cell)
  (:predicates (at ?t - token ?c - cell) (free ?c - cell) (occupied ?c - cell))
  (:action slide
    :parameters (?t - token ?from ?to - cell)
    :precondition (and (at ?t ?from) (occupied ?from) (free ?to))
    :effect (and (at ?t ?to) (occupied ?to) (free ?from)
                 (not (at ?t ?from)) (not (occupied ?from)) (not (free ?to)))))
)";
    inst.problem = R"((define (problem tokens-3)
  (:domain tokens)
  (:objects t1 t2 - token x1 x2 x3 - cell)
  (:init (at t1 x1) (at t2 x2) (occupied x1) (occupied x2) (free x3))
  (:goal (and (occupied x1) (occupied x2) (occupied x3))))
)";
    return inst;
}

Instance lights_unsolvable() {
    Instance inst;
    inst.name = "lights-3";
    // Every action flips two lights, so the number lit stays even.
    inst.domain = R"((define (domain lights)
  (:requirements :strips :typing)
  (:types light)
  (:predicates (on ?l - light) (off ?l - light) (pair ?a ?b - light))
  (:action flip-off-off
    :parameters (?a ?b - light)
    :precondition (and (pair ?a ?b) (off ?a) (off ?b))
    :effect (and (on ?a) (on ?b) (not (off ?a)) (not (off ?b))))
  (:action flip-on-off
    :parameters (?a ?b - light)
    :precondition (and (pair ?a ?b) (on ?a) (off ?b))
    :effect (and (off ?a) (on ?b) (not (on ?a)) (not (off ?b))))
  (:action flip-on-on
    :parameters (?a ?b - light)
    :precondition (and (pair ?a ?b) (on ?a) (on ?b))
    :effect (and (off ?a) (off ?b) (not (on ?a)) (not (on ?b)))))
)";
    inst.problem = R"((define (problem lights-3)
  (:domain lights)
  (:objects l1 l2 l3 - light)
  (:init (off l1) (off l2) (off l3)
         (pair l1 l2) (pair l2 l1) (pair l1 l3) (pair l3 l1) (pair l2 l3) (pair l3 l2))
  (:goal (and (on l1) (on l2) (on l3))))
)";
    return inst;
}

Instance by_name(const std::string &family, int n) {
    if (family == "toh")
        return toh(n);
    if (family == "gripper")
        return gripper(n);
    if (family == "ferry")
        return ferry(n);
    if (family == "tsp")
        return tsp(n);
    throw std::invalid_argument("unknown generator family '" + family + "'");
}

} // namespace spikeplan::gen
