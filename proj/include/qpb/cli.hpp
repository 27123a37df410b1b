#ifndef QPB_CLI_HPP
#define QPB_CLI_HPP

#include <istream>
#include <string>
#include <vector>

#include "qpb/poisson.hpp"
#include "qpb/trunc.hpp"

namespace qpb::cli {

enum class Format { Text, Csv };

struct Result {
  std::string out;
  std::string err;
  int exit_code = 0;
};

/// Runs one command. `args` excludes the program name. Exit codes: 0 on
/// success, 1 on domain errors, 2 on syntax or usage errors. On failure the
/// first token written to `err` is the reason code.
Result run(const std::vector<std::string>& args, std::istream& in);

/// CSV columns: axiom,trials,failures
std::string emit_report(const AxiomReport& r, Format f);
/// CSV columns: block,max_rel_err
std::string emit_report(const FdReport& r, Format f, int precision = 12);
/// CSV columns: n,ell_n,target,abs_err
std::string emit_report(const std::vector<ConvergenceRow>& rows, Format f, int precision = 12);
/// CSV columns: n,drho_dt_start,drho_dt_mean
std::string emit_report(const IllPosednessReport& r, Format f, int precision = 12);

std::string format_double(double v, int precision);

}  // namespace qpb::cli

#endif
