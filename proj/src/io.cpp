#include "multitime/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace multitime::io {

// ---- Polynomial ----------------------------------------------------------

Polynomial Polynomial::constant(std::int64_t c, std::size_t variables) {
    Polynomial p(variables);
    p.terms_[Exponents(variables, 0)] = c;
    p.prune();
    return p;
}

Polynomial Polynomial::variable(std::size_t axis, std::size_t variables) {
    if (axis >= variables) throw OutOfRange("polynomial variable outside t1..t" + std::to_string(variables));
    Polynomial p(variables);
    Exponents e(variables, 0);
    e[axis] = 1;
    p.terms_[e] = 1;
    return p;
}

void Polynomial::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) it = it->second == 0 ? terms_.erase(it) : std::next(it);
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial out = *this;
    for (const auto& [e, c] : o.terms_) out.terms_[e] += c;
    out.prune();
    return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial out(variables_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            Exponents e(variables_);
            for (std::size_t i = 0; i < variables_; ++i) e[i] = ea[i] + eb[i];
            out.terms_[e] += ca * cb;
        }
    }
    out.prune();
    return out;
}

Polynomial Polynomial::operator-() const {
    Polynomial out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

double Polynomial::evaluate(std::span<const Coord> t) const {
    if (t.size() != variables_)
        throw DimensionMismatch("polynomial in " + std::to_string(variables_) + " variables evaluated at " +
                                std::to_string(t.size()) + " coordinates");
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double term = static_cast<double>(c);
        for (std::size_t i = 0; i < variables_; ++i)
            for (int k = 0; k < e[i]; ++k) term *= static_cast<double>(t[i]);
        sum += term;
    }
    return sum;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    // Highest total degree first reads more naturally.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string mono;
        for (std::size_t i = 0; i < variables_; ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "t" + std::to_string(i + 1);
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        const std::int64_t mag = c < 0 ? -c : c;
        if (out.empty())
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        if (mono.empty())
            out += std::to_string(mag);
        else
            out += (mag == 1 ? "" : std::to_string(mag) + "*") + mono;
    }
    return out;
}

namespace {

class PolynomialParser {
public:
    PolynomialParser(const std::string& text, std::size_t variables) : text_(text), variables_(variables) {}

    Polynomial run() {
        Polynomial p = expression();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("polynomial \"" + text_ + "\", column " + std::to_string(pos_ + 1) + ": " + what);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::int64_t integer() {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E'))
            fail("only integer coefficients are supported");
        if (pos_ - start > 18) fail("integer too large");
        return std::stoll(text_.substr(start, pos_ - start));
    }

    Polynomial expression() {
        Polynomial p = term();
        for (;;) {
            if (accept('+'))
                p = p + term();
            else if (accept('-'))
                p = p + -term();
            else
                return p;
        }
    }

    Polynomial term() {
        Polynomial p = factor();
        while (accept('*')) p = p * factor();
        return p;
    }

    Polynomial factor() {
        if (accept('-')) return -factor();
        Polynomial base = primary();
        if (!accept('^')) return base;
        const std::int64_t e = integer();
        if (e > 32) fail("exponent too large");
        Polynomial out = Polynomial::constant(1, variables_);
        for (std::int64_t i = 0; i < e; ++i) out = out * base;
        return out;
    }

    Polynomial primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        if (accept('(')) {
            Polynomial p = expression();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return Polynomial::constant(integer(), variables_);
        if (c == 't') {
            ++pos_;
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) fail("expected a variable index after 't'");
            const auto index = std::stoul(text_.substr(start, pos_ - start));
            if (index < 1 || index > variables_) {
                pos_ = start - 1;
                fail("variable t" + std::to_string(index) + " outside t1..t" + std::to_string(variables_));
            }
            return Polynomial::variable(index - 1, variables_);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const std::string& text_;
    std::size_t variables_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(const std::string& text, std::size_t variables) {
    if (variables == 0) throw DimensionMismatch("polynomial needs at least one variable");
    return PolynomialParser(text, variables).run();
}

// ---- CSV -----------------------------------------------------------------

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_grid_csv(std::ostream& os, const SolutionGrid& grid, const std::string& value_prefix) {
    const LatticeWindow& w = grid.window();
    for (std::size_t a = 0; a < w.arity(); ++a) os << (a ? "," : "") << "t" << a + 1;
    for (std::size_t i = 0; i < grid.dimension(); ++i) os << "," << value_prefix << i + 1;
    os << '\n';
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const MultiIndex t = w.point(i);
        for (std::size_t a = 0; a < t.arity(); ++a) os << (a ? "," : "") << t[a];
        for (double v : grid.at(i)) os << "," << format_double(v);
        os << '\n';
    }
}

void write_grid_csv(const std::filesystem::path& path, const SolutionGrid& grid) {
    std::ofstream os(path);
    if (!os) throw InputError("cannot open " + path.string() + " for writing");
    write_grid_csv(os, grid);
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, sep)) out.push_back(cell);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& where) {
    const std::string s = trim(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (s.empty() || used != s.size()) throw ParseError(where + ": expected a number, got '" + s + "'");
    if (!std::isfinite(v)) throw ParseError(where + ": non-finite value '" + s + "'");
    return v;
}

Coord parse_coord(const std::string& text, const std::string& where) {
    const std::string s = trim(text);
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (s.empty() || used != s.size()) throw ParseError(where + ": expected an integer, got '" + s + "'");
    if (v < 0) throw ParseError(where + ": negative lattice coordinate " + s);
    return v;
}

}  // namespace

SolutionGrid read_grid_csv(std::istream& is, const std::string& source) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError(source + ":1: empty file");
    const auto header = split(trim(line), ',');
    std::size_t m = 0;
    while (m < header.size() && trim(header[m]) == "t" + std::to_string(m + 1)) ++m;
    const std::size_t n = header.size() - m;
    if (m == 0 || n == 0) throw ParseError(source + ":1: header must be t1..tm followed by value columns");

    std::vector<std::vector<Coord>> points;
    std::vector<Vector> values;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const std::string where = source + ":" + std::to_string(line_no);
        const auto cells = split(trim(line), ',');
        if (cells.size() != header.size())
            throw ParseError(where + ": expected " + std::to_string(header.size()) + " fields, got " +
                             std::to_string(cells.size()));
        std::vector<Coord> t(m);
        for (std::size_t a = 0; a < m; ++a) t[a] = parse_coord(cells[a], where);
        Vector v(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) v[static_cast<Eigen::Index>(i)] = parse_number(cells[m + i], where);
        points.push_back(std::move(t));
        values.push_back(std::move(v));
    }
    if (points.empty()) throw ParseError(source + ": no data rows");
    std::vector<Coord> bounds(m, 0);
    for (const auto& t : points)
        for (std::size_t a = 0; a < m; ++a) bounds[a] = std::max(bounds[a], t[a]);
    for (auto& b : bounds) b = std::max<Coord>(b, 1);
    LatticeWindow w(bounds);
    if (points.size() != w.size())
        throw ParseError(source + ": " + std::to_string(points.size()) + " rows do not cover the window (" +
                         std::to_string(w.size()) + " points)");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (MultiIndex(points[i]) != w.point(i))
            throw ParseError(source + ":" + std::to_string(i + 2) + ": rows are not in lexicographic window order");
    }
    return SolutionGrid(std::move(w), std::move(values));
}

SolutionGrid read_grid_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw InputError("cannot open " + path.string());
    return read_grid_csv(is, path.string());
}

// ---- Meshes --------------------------------------------------------------

namespace {

// Next non-empty line with comments stripped; false at end of input.
bool next_content_line(std::istream& is, std::string& line, std::size_t& line_no) {
    while (std::getline(is, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (!line.empty()) return true;
    }
    return false;
}

std::vector<std::string> fields(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    for (std::string f; is >> f;) out.push_back(f);
    return out;
}

}  // namespace

SurfaceGrid read_mesh(std::istream& is, const std::string& source) {
    std::string line;
    std::size_t line_no = 0;
    if (!next_content_line(is, line, line_no)) throw ParseError(source + ": empty mesh file");
    const auto head = fields(line);
    const std::string where = source + ":" + std::to_string(line_no);
    if (head.size() != 4) throw ParseError(where + ": header must be 'M N h1 h2'");
    const Coord rows = parse_coord(head[0], where);
    const Coord cols = parse_coord(head[1], where);
    const double h1 = parse_number(head[2], where);
    const double h2 = parse_number(head[3], where);
    if (rows < 2 || cols < 2) throw ParseError(where + ": mesh needs M >= 2 and N >= 2");
    if (rows > 100000 || cols > 100000) throw ParseError(where + ": mesh too large");

    const auto count = static_cast<std::size_t>((rows + 1) * (cols + 1));
    std::vector<Vector> nodes;
    nodes.reserve(count);
    std::size_t dim = 0;
    while (nodes.size() < count && next_content_line(is, line, line_no)) {
        const std::string at = source + ":" + std::to_string(line_no);
        const auto f = fields(line);
        if (dim == 0) dim = f.size();
        if (f.size() != dim || dim < 2)
            throw ParseError(at + ": expected " + std::to_string(std::max<std::size_t>(dim, 2)) + " coordinates");
        Vector x(static_cast<Eigen::Index>(dim));
        for (std::size_t i = 0; i < dim; ++i) x[static_cast<Eigen::Index>(i)] = parse_number(f[i], at);
        nodes.push_back(std::move(x));
    }
    if (nodes.size() != count)
        throw ParseError(source + ": expected " + std::to_string(count) + " nodes, got " + std::to_string(nodes.size()));
    if (next_content_line(is, line, line_no))
        throw ParseError(source + ":" + std::to_string(line_no) + ": trailing data after the last node");
    return SurfaceGrid(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), h1, h2, std::move(nodes));
}

SurfaceGrid read_mesh(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw InputError("cannot open " + path.string());
    return read_mesh(is, path.string());
}

void write_mesh(std::ostream& os, const SurfaceGrid& g) {
    os << g.rows() << ' ' << g.cols() << ' ' << format_double(g.h1()) << ' ' << format_double(g.h2()) << '\n';
    for (const Vector& x : g.nodes()) {
        for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? " " : "") << format_double(x[i]);
        os << '\n';
    }
}

void write_mesh(const std::filesystem::path& path, const SurfaceGrid& g) {
    std::ofstream os(path);
    if (!os) throw InputError("cannot open " + path.string() + " for writing");
    write_mesh(os, g);
}

void write_obj(std::ostream& os, const SurfaceGrid& g) {
    os << "# " << g.rows() << "x" << g.cols() << " structured surface\n";
    for (const Vector& x : g.nodes()) {
        os << "v";
        for (Eigen::Index i = 0; i < 3; ++i) os << ' ' << format_double(i < x.size() ? x[i] : 0.0);
        os << '\n';
    }
    // OBJ indices are 1-based.
    for (std::size_t m = 0; m < g.rows(); ++m) {
        for (std::size_t n = 0; n < g.cols(); ++n) {
            const std::size_t a = g.index(m, n) + 1, b = g.index(m + 1, n) + 1;
            const std::size_t c = g.index(m, n + 1) + 1, d = g.index(m + 1, n + 1) + 1;
            os << "f " << a << ' ' << b << ' ' << c << '\n';
            os << "f " << b << ' ' << d << ' ' << c << '\n';
        }
    }
}

void write_obj(const std::filesystem::path& path, const SurfaceGrid& g) {
    std::ofstream os(path);
    if (!os) throw InputError("cannot open " + path.string() + " for writing");
    write_obj(os, g);
}

// ---- Small literals ------------------------------------------------------

LatticeWindow parse_window(const std::string& text) {
    std::string s = text;
    for (char& c : s)
        if (c == 'x' || c == 'X') c = ',';
    std::vector<Coord> bounds;
    for (const auto& part : split(s, ',')) bounds.push_back(parse_coord(part, "window '" + text + "'"));
    if (bounds.empty()) throw ParseError("window '" + text + "': empty");
    for (Coord b : bounds)
        if (b < 1) throw ParseError("window '" + text + "': bounds must be >= 1");
    return LatticeWindow(std::move(bounds));
}

Matrix parse_matrix(const std::string& text) {
    std::vector<std::vector<double>> rows;
    for (const auto& row : split(text, ';')) {
        std::vector<double> r;
        for (const auto& cell : split(row, ',')) r.push_back(parse_number(cell, "matrix '" + text + "'"));
        rows.push_back(std::move(r));
    }
    if (rows.empty() || rows.front().empty()) throw ParseError("matrix '" + text + "': empty");
    Matrix a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.front().size()) throw ParseError("matrix '" + text + "': ragged rows");
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    return a;
}

}  // namespace multitime::io
