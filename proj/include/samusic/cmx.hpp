#pragma once

#include <string>

#include "samusic/types.hpp"

namespace samusic {

/// CMX v1: UTF-8 text matrix container.
///   line 1:  cmx <rows> <cols> <real|complex>
///   then rows*cols entry lines in column-major order,
///   "re" for the real field or "re im" for the complex field,
/// with each value printed in the shortest form that parses back exactly.
struct CmxMatrix {
    Mat values;
    Field field = Field::complex;
};

std::string to_cmx(const Mat& M, Field field);
CmxMatrix from_cmx(const std::string& text);

void write_cmx_file(const std::string& path, const Mat& M, Field field);
CmxMatrix read_cmx_file(const std::string& path);

/// Shortest decimal representation of x that round-trips to the same double.
std::string shortest_double(double x);

}  // namespace samusic
