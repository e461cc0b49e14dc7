#pragma once

#include <iosfwd>
#include <string>

#include "nlcseq/bounds.hpp"
#include "nlcseq/multiseq.hpp"

namespace nlcseq {

inline constexpr const char* kToolVersion = "0.1.0";

// Multisequence text format: '#'-prefixed key=value header lines carrying
// the provenance, then one line per sequence of comma-separated canonical
// element indices. See README.md for the exact key set.
void write_multisequence(std::ostream& os, const Multisequence& S);
Multisequence read_multisequence(std::istream& is);

void write_multisequence_file(const std::string& path, const Multisequence& S);
Multisequence read_multisequence_file(const std::string& path);

// Sweep reports. Columns are fixed:
//   construction,q,d_or_p,N,M,n,r,value,status,bound_num,bound_den,satisfied,millis
// Rows without a bound leave the last four of those fields empty (CSV) or
// null (JSON). with_timing = false zeroes the millis column so reports are
// byte-stable across runs.
void write_report_csv(std::ostream& os, const SweepReport& report,
                      bool with_timing = true);
void write_report_json(std::ostream& os, const SweepReport& report,
                       bool with_timing = true);

// Baseline reports, one row per configuration:
//   construction,q,m,n,r,trials,seed,mean,min,max,ln_mn,log2_mn,truncated
void write_baseline_csv(std::ostream& os, const std::vector<BaselineStats>& rows);
void write_baseline_json(std::ostream& os, const std::vector<BaselineStats>& rows);

}  // namespace nlcseq
