#pragma once

#include <stdexcept>
#include <string>

#include "helical/lattice.hpp"

namespace helical {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what_) : std::runtime_error(what_), line(line_) {}
};

/// Text field files: header `# spinfield eps=<decimal> n=<int>` followed by
/// one `i j sx sy` line per node (j outer, i fastest), floats with 17
/// significant digits. Angular files use `# angularfield ...` and
/// `i j theta_hor theta_ver` lines (undefined trailing bond slots hold 0).
void write_spinfield(const std::string& path, const SpinField& u);
SpinField read_spinfield(const std::string& path);

void write_angularfield(const std::string& path, const AngularField& th);
AngularField read_angularfield(const std::string& path);

/// Chirality sample files use `# chirality eps=<v> n=<v>` and `i j w z` lines.
void write_chirality(const std::string& path, const ChiralityField& c);
ChiralityField read_chirality(const std::string& path);

enum class FieldKind { Spin, Angular };
FieldKind peek_field_kind(const std::string& path);

std::string format17(double v);

}  // namespace helical
