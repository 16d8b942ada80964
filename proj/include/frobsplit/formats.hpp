#ifndef FROBSPLIT_FORMATS_HPP
#define FROBSPLIT_FORMATS_HPP

#include <string>

#include "frobsplit/parweights.hpp"
#include "frobsplit/stab01.hpp"

namespace frobsplit {

// Line-oriented weight data:
//   rank=<r> degree=<d> genus=<g> k=<k>   (one assignment per line)
//   point <label> type=<n1,n2,...> weight=<a1,a2,...>
ParData parse_pardata(const std::string& text);

// Line-oriented flag configurations:
//   rank=<r>
//   field=<q>
//   point <label> at=<t|inf> flag=<row;row;...>   (full-flag matrix, rows of r entries)
//   line <label> at=<t|inf> span=<row>            (the type (r-1,1) flag line)
//   hyperplane <label> at=<t> normal=<row>        (rank 2 only: the line is ker(normal))
FlagConfig parse_flagconfig(const std::string& text);

std::vector<long> parse_int_list(const std::string& s);

// types in the CLI shape "(2,1);(1,1,1);(1,1,1)" with labels x1, x2, ...
std::map<std::string, QuasiParType> parse_type_list(const std::string& s);

std::string read_file_or_inline(const std::string& arg);

}  // namespace frobsplit

#endif
