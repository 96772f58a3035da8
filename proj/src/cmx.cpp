#include "samusic/cmx.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "samusic/errors.hpp"

namespace samusic {

std::string shortest_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& tok) {
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw InvalidInput("cmx: malformed numeric entry '" + tok + "'");
    return v;
}

}  // namespace

std::string to_cmx(const Mat& M, Field field) {
    if (M.rows() < 1 || M.cols() < 1) throw InvalidInput("cmx: empty matrix");
    if (!M.allFinite()) throw InvalidInput("cmx: matrix has non-finite entries");
    if (field == Field::real && M.imag().cwiseAbs().maxCoeff() != 0.0)
        throw InvalidInput("cmx: real field with nonzero imaginary parts");
    std::string out;
    out.reserve(static_cast<size_t>(M.size()) * 20 + 32);
    out += "cmx " + std::to_string(M.rows()) + ' ' + std::to_string(M.cols()) + ' ' +
           to_string(field) + '\n';
    for (Index j = 0; j < M.cols(); ++j) {
        for (Index i = 0; i < M.rows(); ++i) {
            out += shortest_double(M(i, j).real());
            if (field == Field::complex) {
                out += ' ';
                out += shortest_double(M(i, j).imag());
            }
            out += '\n';
        }
    }
    return out;
}

CmxMatrix from_cmx(const std::string& text) {
    std::istringstream in(text);
    std::string magic, field_name;
    long rows = 0, cols = 0;
    if (!(in >> magic >> rows >> cols >> field_name) || magic != "cmx")
        throw InvalidInput("cmx: bad header");
    if (rows < 1 || cols < 1) throw InvalidInput("cmx: non-positive dimensions");
    const Field field = field_from_string(field_name);
    CmxMatrix out;
    out.field = field;
    out.values.resize(rows, cols);
    std::string tok_re, tok_im;
    for (long j = 0; j < cols; ++j) {
        for (long i = 0; i < rows; ++i) {
            if (!(in >> tok_re)) throw InvalidInput("cmx: truncated data section");
            double re = parse_double(tok_re), im = 0.0;
            if (field == Field::complex) {
                if (!(in >> tok_im)) throw InvalidInput("cmx: truncated complex entry");
                im = parse_double(tok_im);
            }
            if (!std::isfinite(re) || !std::isfinite(im))
                throw InvalidInput("cmx: non-finite entry");
            out.values(i, j) = Complex(re, im);
        }
    }
    std::string trailing;
    if (in >> trailing) throw InvalidInput("cmx: trailing data after matrix");
    return out;
}

void write_cmx_file(const std::string& path, const Mat& M, Field field) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open for writing: " + path);
    f << to_cmx(M, field);
    if (!f) throw Error("write failed: " + path);
}

CmxMatrix read_cmx_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return from_cmx(buf.str());
}

}  // namespace samusic
