#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "wqpe/thirring.hpp"

namespace wqpe::cli {

// Runs one subcommand. Returns 0 on success, 2 on usage errors (bad flags,
// unreadable or malformed input files) and 1 when the computation fails.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// A model file: {"model":"thirring","sites":N,"mass":x,"coupling":y} or
// {"model":"matrix","re":[[...]],"im":[[...]]}.
struct ModelFile {
  std::string kind;
  ThirringParams thirring;
  CMatrix matrix;
};
ModelFile load_model(const std::string& path);

// Shortest decimal that round-trips the double.
std::string format_number(double value);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Manifest {
  std::string command;
  std::uint64_t seed = 0;
  std::string output;
  std::vector<std::pair<std::string, std::string>> parameters;
};

std::string render_csv(const Manifest& manifest, const Table& table);

// Writes to a temporary sibling and renames it over `path`.
void write_atomically(const std::string& path, const std::string& text);

}  // namespace wqpe::cli
