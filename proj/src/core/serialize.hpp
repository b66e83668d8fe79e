#pragma once

#include <string>

#include "core/asymptotics.hpp"
#include "core/viscosity.hpp"

// Report emission. All floating-point output goes through a fixed
// 17-significant-digit formatter so identical runs produce byte-identical
// artifacts; JSON is assembled by hand for the same reason.
namespace fpl {

std::string format_g17(double x);

std::string grid_json(const DomainGrid& g);
std::string field_csv(const ScalarField& f);
std::string eigenpair_json(const ProblemSpec& spec, const EigenPair& pair);
std::string sweep_csv(const SweepReport& report);
std::string sweep_json(const SweepReport& report);
std::string checks_json(const SweepReport& report, const CheckOptions& opts);
std::string gnuplot_lambda(const SweepReport& report);
std::string gnuplot_holder(const SweepReport& report);
std::string residual_csv(const DomainGrid& g, const ResidualReport& rep);
std::string residual_json(const ResidualReport& rep);

}  // namespace fpl
