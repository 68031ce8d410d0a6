#ifndef GFQ_IO_HPP
#define GFQ_IO_HPP

#include <iosfwd>
#include <string>

#include "gfq/linalg.hpp"

namespace gfq {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Text matrix format. Header `field p k c0 .. ck` (canonical modulus,
/// constant term first) or `ext p k s t` (quadratic tower over the canonical
/// GF(p^k)); then `rows cols`; then row-major entries as base-p integers;
/// then an optional `labels ...` line. A trailing `VERDICT:` line is ignored.
void write_matrix(std::ostream& os, const Mat& m);
std::string matrix_to_string(const Mat& m);

Mat parse_matrix(std::istream& is);
Mat parse_matrix_string(const std::string& text);
Mat load_matrix_file(const std::string& path);
void save_matrix_file(const std::string& path, const Mat& m);

}  // namespace gfq

#endif
