#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>

namespace samusic {

// All numeric carriers are dense complex matrices; the real field is the
// special case with vanishing imaginary parts. A Field tag travels with
// file I/O and random generation so real data stays exactly real.
using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;
using Index = Eigen::Index;

enum class Field { real, complex };

inline std::string to_string(Field f) { return f == Field::real ? "real" : "complex"; }

inline Field field_from_string(const std::string& s);

}  // namespace samusic

#include "samusic/errors.hpp"

namespace samusic {

inline Field field_from_string(const std::string& s) {
    if (s == "real") return Field::real;
    if (s == "complex") return Field::complex;
    throw InvalidInput("unknown field: " + s);
}

}  // namespace samusic
