#pragma once

// Subcommands of the pcf tool. Each returns its exit code and output streams
// instead of writing to the process, so the commands can be driven in-process.

#include <optional>
#include <string>
#include <vector>

#include "pcf/document.hpp"

namespace pcf::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kInputError = 2,
  kNonSplit = 3,
  kInternal = 4,
};

enum class OutputFormat { Text, Structured };
enum class EvalMode { Power, DrazinPower };

struct GlobalOptions {
  std::optional<FieldKind> field;
  std::optional<double> abs_eps;
  std::optional<double> rel_eps;
  OutputFormat format = OutputFormat::Text;
};

struct CommandResult {
  int exit_code = kOk;
  std::string out;
  std::string err;
};

CommandResult cmd_pcf(const MatrixDocument& doc, const GlobalOptions& opt);
CommandResult cmd_eval(const MatrixDocument& doc, long long k, EvalMode mode, const GlobalOptions& opt);
CommandResult cmd_drazin(const MatrixDocument& doc, const GlobalOptions& opt);
CommandResult cmd_verify(const MatrixDocument& doc, const MatrixDocument& candidate, const GlobalOptions& opt);
CommandResult cmd_minpoly(const MatrixDocument& doc, const GlobalOptions& opt);
CommandResult cmd_index(const MatrixDocument& doc, const GlobalOptions& opt);
CommandResult cmd_projections(const MatrixDocument& doc, const GlobalOptions& opt);
CommandResult cmd_real_form(const MatrixDocument& doc, bool power_basis, const GlobalOptions& opt);

/// Full command line, argv[0] included. Parse failures map to exit code 2.
CommandResult run(const std::vector<std::string>& argv);

}  // namespace pcf::cli
