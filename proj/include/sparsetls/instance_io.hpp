#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "sparsetls/problem.hpp"

namespace sparsetls {

struct InstanceHeader {
  Index M = 0;
  Index N = 0;
  Index K = 0;
  double xi = 0.0;
  std::uint64_t seed = 0;
};

struct LoadedInstance {
  InstanceHeader header;
  ProblemInstance instance;
};

// Text dump:
//
//   PCS1 M N K xi seed
//   A_o            followed by M rows of N values
//   x_o            followed by one line of N values
//   E_o            followed by M rows of N values
//   e_o            followed by one line of M values
//   b              followed by one line of M values
//
// Values are written with 17 significant digits, so every stored double
// round-trips exactly. The loader rebuilds A = A_o - E_o and b_o = b + e_o.
void write_instance(std::ostream& os, const InstanceHeader& header, const ProblemInstance& inst);
LoadedInstance read_instance(std::istream& is);

void save_instance(const std::filesystem::path& path, const InstanceHeader& header,
                   const ProblemInstance& inst);
LoadedInstance load_instance(const std::filesystem::path& path);

}  // namespace sparsetls
