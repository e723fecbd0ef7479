#pragma once

#include <string>
#include <vector>

#include "hbl/monad.hpp"
#include "report.hpp"

namespace hbl::cli
{

/// Suites run by `verify`, in report order.
const std::vector<std::string>& suite_names();

SuiteResult suite_cohomology(int e_lo, int e_hi, int range, unsigned workers);
SuiteResult suite_reference_values(int e_lo, int e_hi);
SuiteResult suite_samples(const RunConfig& cfg, unsigned workers);
SuiteResult suite_dimensions(int e_lo, int e_hi);
SuiteResult suite_lemma_monads(int e_lo, int e_hi);
SuiteResult suite_rationality(int e_lo, int e_hi);
SuiteResult suite_euler(int e_lo, int e_hi);

Report cmd_cohomology(const RunConfig& cfg);

struct SampleOutcome
{
    Report report;
    std::vector<MonadPoint> monads;
};

/// Samples cfg.samples monads per e (seed + i for the i-th), classifies each.
SampleOutcome cmd_sample(const RunConfig& cfg);

Report cmd_verify(const RunConfig& cfg);
Report cmd_dims(const RunConfig& cfg);

} // namespace hbl::cli
