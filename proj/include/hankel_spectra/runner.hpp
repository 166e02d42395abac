#pragma once

#include <string>
#include <vector>

#include "hankel_spectra/checks.hpp"
#include "hankel_spectra/config.hpp"

namespace hankel::cli {

using checks::CheckResult;

struct ReportBundle {
  std::vector<std::string> files;
  std::vector<CheckResult> checks;
  std::string summary;

  /// True iff every enabled check passed.
  bool ok() const;
};

ReportBundle run_predict(const RunConfig &config);
ReportBundle run_spectrum(const RunConfig &config);
ReportBundle run_verify_models(const RunConfig &config);
ReportBundle run_convert(const RunConfig &config);
ReportBundle run_probe_resolvent(const RunConfig &config);

/// Dispatches on config.mode.
ReportBundle run(const RunConfig &config);

/// Worker cap from HANKEL_SPECTRA_THREADS (default: hardware concurrency).
std::size_t worker_count();

/// %.17g formatting used for every number in the CSV output.
std::string format_number(double x);

} // namespace hankel::cli
