#pragma once

#include "treedd/oracle.hpp"
#include "treedd/tdd.hpp"

#include <memory>
#include <optional>
#include <stdexcept>

namespace treedd {

/// Minimally adequate teacher for a hidden Boolean function.
class Teacher {
public:
    virtual ~Teacher() = default;
    virtual bool membership(const Assignment& tau) = 0;
    /// nullopt when the hypothesis matches the hidden function, otherwise a
    /// counterexample assignment.
    virtual std::optional<Assignment> equivalence(const Tdd& hypothesis) = 0;
};

struct LearnStats {
    uint64_t membership_queries = 0;
    uint64_t equivalence_queries = 0;
};

/// Teacher answers contradict each other (e.g. a claimed counterexample on
/// which hypothesis and membership answers agree).
class learn_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Learns the canonical TDD of the teacher's hidden function over the fixed
/// vtree, using membership and equivalence queries. Every hypothesis
/// submitted to the teacher is full and deterministic; the returned circuit
/// is the canonical minimal one.
Tdd learn(VtreePtr t, Teacher& teacher, LearnStats* stats = nullptr);

std::unique_ptr<Teacher> truth_table_teacher(BoolFunTable f);
std::unique_ptr<Teacher> tdd_teacher(Tdd c);

} // namespace treedd
