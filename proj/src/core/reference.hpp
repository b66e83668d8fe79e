#pragma once

#include <string>

#include "core/eigensolver.hpp"

// Plain-double reimplementations of the core quantities, written as the
// literal sums with no log-domain machinery and no shared kernel tables.
// They overflow for large p by design; their role is to pin down the
// log-domain path at moderate p.
namespace fpl::reference {

double gagliardo_energy(const ScalarField& u, double sigma, double p);
double denominator_value(const ProblemSpec& spec, const ScalarField& u,
                         const ScalarField& v);
double rayleigh_quotient(const ProblemSpec& spec, const ScalarField& u,
                         const ScalarField& v);

// Deterministic uniform draw in [lo, hi); splitmix64 under the hood.
double uniform(std::uint64_t& state, double lo, double hi);

// Built-in cross-check battery (oracle equivalence, gradient identity,
// cone identities, rebalance invariants, one small solve). Returns the
// number of failed checks; per-check lines appended to log when given.
int selftest(bool verbose, std::string* log);

}  // namespace fpl::reference
