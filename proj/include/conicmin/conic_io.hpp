// Line-oriented text formats: conic files and transformation logs.
//
// Conic file:          transform log:
//   vars: g,h            conic-log v1
//   a: <poly>            vars: g,h
//   ...                  source.a: <poly> ... source.f: <poly>
//   f: <poly>            steps: N
//                        step.k.kind / label / u11..u33 / scalar.num /
//                        scalar.den / patch_var / digest
//                        target.a: ... target.f:
// Blank lines and lines starting with '#' are ignored.
#pragma once

#include "conicmin/conic.hpp"

#include <iosfwd>

namespace conicmin {

std::string write_conic(const Conic& L);
Conic read_conic(std::istream& in);
Conic read_conic_file(const std::string& path);
void write_conic_file(const std::string& path, const Conic& L);

struct LogFile {
  Conic source;
  TransformLog log;
  Conic target;
};

std::string write_log(const LogFile& lf);
LogFile read_log(std::istream& in);
LogFile read_log_file(const std::string& path);
void write_log_file(const std::string& path, const LogFile& lf);

}  // namespace conicmin
