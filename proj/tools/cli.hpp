#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dualbound/scalar.hpp"

namespace dualbound::cli {

enum ExitCode : int { kOk = 0, kInfeasible = 1, kUsage = 2, kSize = 3, kIo = 4 };

// One sweep row.
struct BoundReport {
  std::string problem;
  long param = 0;
  std::string epsilon;  // empty unless capital
  std::string cert_kind;
  Scalar certificate_value = Rational(0);
  std::optional<Scalar> lp_optimum;
  std::optional<Scalar> gap;
  bool feasible = false;
  long wall_time_ms = 0;
};

inline constexpr const char* kCsvHeader =
    "problem,param,epsilon,cert_kind,certificate_value,lp_optimum,gap,feasible,wall_time_ms,"
    "certificate_value_decimal,lp_optimum_decimal";

std::string csv_row(const BoundReport& r);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dualbound::cli
