#pragma once

#include <filesystem>
#include <string>

#include "qruler/budget.hpp"
#include "qruler/distribution.hpp"
#include "qruler/model.hpp"
#include "qruler/wk.hpp"

namespace qruler::io {

/// 17 significant digits, scientific notation.
std::string format_double(double value);

std::string probe_csv(const PureProbe& probe);            // g,re,im
std::string coherence_csv(const CoherenceFunction& gamma);  // tau,re,im
std::string distribution_csv(const OutcomeDistribution& p);  // mu,p  or  m,k,p
std::string curve_csv(const BudgetCurve& curve);            // s,value

/// Writes `contents` to `path`, creating parent directories. Raises IoError.
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace qruler::io
