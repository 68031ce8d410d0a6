#include "gfq/io.hpp"

#include <fstream>
#include <sstream>

namespace gfq {

void write_matrix(std::ostream& os, const Mat& m) {
    const Field& f = m.field();
    if (f.is_quadratic_extension()) {
        const Field& b = f.base();
        os << "ext " << b.characteristic() << ' ' << b.degree() << ' ' << unsigned(f.ext_s()) << ' '
           << unsigned(f.ext_t()) << '\n';
    } else {
        os << "field " << f.characteristic() << ' ' << f.degree();
        for (int c : f.modulus()) os << ' ' << c;
        os << '\n';
    }
    os << m.rows() << ' ' << m.cols() << '\n';
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << unsigned(m.at(i, j));
        }
        os << '\n';
    }
    if (!m.labels.empty()) {
        os << "labels";
        for (const auto& l : m.labels) os << ' ' << l;
        os << '\n';
    }
}

std::string matrix_to_string(const Mat& m) {
    std::ostringstream os;
    write_matrix(os, m);
    return os.str();
}

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ParseError("line " + std::to_string(line) + ": " + msg);
}

}  // namespace

Mat parse_matrix(std::istream& is) {
    std::string line;
    int lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(is, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            if (line.rfind("VERDICT:", 0) == 0) continue;
            return true;
        }
        return false;
    };

    if (!next_line()) throw ParseError("empty input");
    std::istringstream hs(line);
    std::string kind;
    hs >> kind;
    const Field* f = nullptr;
    if (kind == "field") {
        int p = 0, k = 0;
        if (!(hs >> p >> k)) fail(lineno, "malformed field header");
        const Field& base = Field::get(p, k);
        std::vector<int> mod;
        int c;
        while (hs >> c) mod.push_back(c);
        if (!mod.empty() && mod != base.modulus())
            fail(lineno, "modulus is not the canonical irreducible for GF(" + std::to_string(p) + "^" +
                             std::to_string(k) + ")");
        f = &base;
    } else if (kind == "ext") {
        int p = 0, k = 0;
        long s = -1, t = -1;
        if (!(hs >> p >> k >> s >> t)) fail(lineno, "malformed ext header");
        const Field& base = Field::get(p, k);
        const Field& ext = Field::quadratic_extension(base);
        if (s != long(ext.ext_s()) || t != long(ext.ext_t()))
            fail(lineno, "extension constants do not match the canonical quadratic");
        f = &ext;
    } else {
        fail(lineno, "expected 'field' or 'ext' header");
    }

    if (!next_line()) throw ParseError("missing dimensions line");
    std::istringstream ds(line);
    int rows = -1, cols = -1;
    if (!(ds >> rows >> cols) || rows < 0 || cols < 0) fail(lineno, "malformed dimensions");

    Mat m(*f, rows, cols);
    long need = long(rows) * cols;
    long got = 0;
    while (got < need) {
        if (!next_line()) fail(lineno, "unexpected end of input: expected " + std::to_string(need) +
                                           " entries, got " + std::to_string(got));
        std::istringstream es(line);
        long v;
        while (es >> v) {
            if (got >= need) fail(lineno, "too many entries");
            if (v < 0 || v >= long(f->size()))
                fail(lineno, "entry " + std::to_string(v) + " outside field of size " +
                                 std::to_string(f->size()));
            m.at(int(got / cols), int(got % cols)) = code_t(v);
            ++got;
        }
        std::string tail;
        es.clear();
        if (es >> tail) fail(lineno, "unexpected token '" + tail + "' among entries");
    }

    if (next_line()) {
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (word != "labels") fail(lineno, "expected optional 'labels' line, found '" + word + "'");
        std::vector<std::string> labels;
        while (ls >> word) labels.push_back(word);
        if (int(labels.size()) != cols)
            fail(lineno, "expected " + std::to_string(cols) + " labels, got " +
                             std::to_string(labels.size()));
        m.labels = std::move(labels);
    }
    return m;
}

Mat parse_matrix_string(const std::string& text) {
    std::istringstream is(text);
    return parse_matrix(is);
}

Mat load_matrix_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open " + path);
    return parse_matrix(is);
}

void save_matrix_file(const std::string& path, const Mat& m) {
    std::ofstream os(path);
    if (!os) throw ParseError("cannot open " + path + " for writing");
    write_matrix(os, m);
}

}  // namespace gfq
