#include <cutvol/grid.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cutvol {

CellCorners2D ScalarGrid::cell2(std::size_t i, std::size_t j) const {
    if (dim != 2) throw DimensionMismatch("cell2 called on a 3D grid");
    return {at(i, j), at(i + 1, j), at(i, j + 1), at(i + 1, j + 1)};
}

CellCorners3D ScalarGrid::cell3(std::size_t i, std::size_t j,
                                std::size_t k) const {
    if (dim != 3) throw DimensionMismatch("cell3 called on a 2D grid");
    CellCorners3D c;
    for (int dz = 0; dz <= 1; ++dz)
        for (int dy = 0; dy <= 1; ++dy)
            for (int dx = 0; dx <= 1; ++dx)
                c.set(dx, dy, dz, at(i + dx, j + dy, k + dz));
    return c;
}

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

void validate_grid(const ScalarGrid& g, const char* what) {
    if (g.dim != 2 && g.dim != 3)
        throw DimensionMismatch(std::string(what) + ": dimension must be 2 or 3");
    const std::size_t need_z = g.dim == 3 ? 2 : 1;
    if (g.nx < 2 || g.ny < 2 || g.nz < need_z)
        throw SpecOutOfDomain(std::string(what) +
                              ": need at least two nodes per axis");
    if (g.dim == 2 && g.nz != 1)
        throw DimensionMismatch(std::string(what) + ": 2D grid with nz != 1");
    if (!(g.h > 0.0) || !std::isfinite(g.h))
        throw SpecOutOfDomain(std::string(what) + ": spacing must be positive");
    if (g.values.size() != g.node_count())
        throw SpecOutOfDomain(std::string(what) + ": value count mismatch");
}

}  // namespace

ScalarGrid refine(const ScalarGrid& g) {
    validate_grid(g, "refine");
    ScalarGrid f;
    f.dim = g.dim;
    f.nx = 2 * g.nx - 1;
    f.ny = 2 * g.ny - 1;
    f.nz = g.dim == 3 ? 2 * g.nz - 1 : 1;
    f.h = g.h / 2.0;
    f.values.resize(f.node_count());
    for (std::size_t k = 0; k < f.nz; ++k) {
        const std::size_t kc = k / 2, ko = k % 2;
        for (std::size_t j = 0; j < f.ny; ++j) {
            const std::size_t jc = j / 2, jo = j % 2;
            for (std::size_t i = 0; i < f.nx; ++i) {
                const std::size_t ic = i / 2, io = i % 2;
                double sum = 0.0;
                int n = 0;
                for (std::size_t dk = 0; dk <= ko; ++dk)
                    for (std::size_t dj = 0; dj <= jo; ++dj)
                        for (std::size_t di = 0; di <= io; ++di) {
                            sum += g.at(ic + di, jc + dj, kc + dk);
                            ++n;
                        }
                f.at(i, j, k) = sum / double(n);
            }
        }
    }
    return f;
}

ScalarGrid coarsen(const ScalarGrid& g) {
    validate_grid(g, "coarsen");
    const bool ok_x = g.nx % 2 == 1 && g.nx >= 3;
    const bool ok_y = g.ny % 2 == 1 && g.ny >= 3;
    const bool ok_z = g.dim == 2 || (g.nz % 2 == 1 && g.nz >= 3);
    if (!ok_x || !ok_y || !ok_z)
        throw NotDivisible("coarsen needs 2k+1 nodes per axis");
    ScalarGrid c;
    c.dim = g.dim;
    c.nx = (g.nx + 1) / 2;
    c.ny = (g.ny + 1) / 2;
    c.nz = g.dim == 3 ? (g.nz + 1) / 2 : 1;
    c.h = g.h * 2.0;
    c.values.resize(c.node_count());
    for (std::size_t k = 0; k < c.nz; ++k)
        for (std::size_t j = 0; j < c.ny; ++j)
            for (std::size_t i = 0; i < c.nx; ++i)
                c.at(i, j, k) = g.at(2 * i, 2 * j, g.dim == 3 ? 2 * k : 0);
    return c;
}

// ==== PARSING ====

namespace {

struct Token {
    std::string_view text;
    std::size_t line, col;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> toks;
    std::size_t line = 1, col = 1;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        const char ch = text[i];
        if (ch == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\v' || ch == '\f') {
            ++col;
            ++i;
            continue;
        }
        const std::size_t start = i, start_col = col;
        while (i < n && text[i] != '\n' && text[i] != ' ' && text[i] != '\t' &&
               text[i] != '\r' && text[i] != '\v' && text[i] != '\f') {
            ++i;
            ++col;
        }
        toks.push_back(
            {std::string_view(text).substr(start, i - start), line, start_col});
    }
    return toks;
}

double parse_double_tok(const Token& t) {
    double v = 0.0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw ParseError("malformed number '" + std::string(t.text) + "'",
                         t.line, t.col);
    return v;
}

std::size_t parse_size_tok(const Token& t, const char* what) {
    unsigned long long v = 0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw ParseError(std::string("malformed ") + what + " '" +
                             std::string(t.text) + "'",
                         t.line, t.col);
    return std::size_t(v);
}

ScalarGrid parse_lsg(const std::string& text) {
    const std::vector<Token> toks = tokenize(text);
    std::size_t pos = 0;
    auto need = [&](const char* what) -> const Token& {
        if (pos >= toks.size()) {
            const std::size_t line = toks.empty() ? 1 : toks.back().line;
            throw ParseError(std::string("unexpected end of input, expected ") +
                                 what,
                             line, 1);
        }
        return toks[pos++];
    };

    const Token& magic = need("LSG magic");
    if (magic.text != "LSG")
        throw ParseError("expected LSG magic", magic.line, magic.col);

    ScalarGrid g;
    const Token& dim_tok = need("dimension");
    const std::size_t dim = parse_size_tok(dim_tok, "dimension");
    if (dim != 2 && dim != 3)
        throw ParseError("dimension must be 2 or 3", dim_tok.line, dim_tok.col);
    g.dim = int(dim);
    g.nx = parse_size_tok(need("nx"), "node count");
    g.ny = parse_size_tok(need("ny"), "node count");
    g.nz = dim == 3 ? parse_size_tok(need("nz"), "node count") : 1;
    const Token& h_tok = need("spacing");
    g.h = parse_double_tok(h_tok);
    if (!(g.h > 0.0) || !std::isfinite(g.h))
        throw ParseError("spacing must be positive", h_tok.line, h_tok.col);
    if (g.nx < 2 || g.ny < 2 || (dim == 3 && g.nz < 2)) {
        throw ParseError("need at least two nodes per axis", dim_tok.line,
                         dim_tok.col);
    }

    const std::size_t count = g.node_count();
    g.values.reserve(count);
    for (std::size_t v = 0; v < count; ++v)
        g.values.push_back(parse_double_tok(need("node value")));
    if (pos != toks.size())
        throw ParseError("trailing data after grid values", toks[pos].line,
                         toks[pos].col);
    return g;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        std::string_view field = comma == std::string_view::npos
                                     ? line.substr(start)
                                     : line.substr(start, comma - start);
        while (!field.empty() && (field.front() == ' ' || field.front() == '\t'))
            field.remove_prefix(1);
        while (!field.empty() &&
               (field.back() == ' ' || field.back() == '\t' ||
                field.back() == '\r'))
            field.remove_suffix(1);
        fields.push_back(field);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

ScalarGrid parse_csv(const std::string& text) {
    struct Row {
        std::size_t i, j, k;
        double value;
    };
    std::vector<Row> rows;
    std::size_t max_i = 0, max_j = 0, max_k = 0;

    int dim = 0;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const std::string_view line =
            std::string_view(text).substr(pos, eol == std::string::npos
                                                   ? text.size() - pos
                                                   : eol - pos);
        ++line_no;
        pos = eol == std::string::npos ? text.size() + 1 : eol + 1;

        bool blank = true;
        for (char ch : line)
            if (ch != ' ' && ch != '\t' && ch != '\r') blank = false;
        if (blank) continue;

        const auto fields = split_csv_line(line);
        if (dim == 0) {  // header row
            if (fields.size() == 3 && fields[0] == "i" && fields[1] == "j" &&
                fields[2] == "value") {
                dim = 2;
            } else if (fields.size() == 4 && fields[0] == "i" &&
                       fields[1] == "j" && fields[2] == "k" &&
                       fields[3] == "value") {
                dim = 3;
            } else {
                throw ParseError("expected CSV header i,j,value or i,j,k,value",
                                 line_no, 1);
            }
            continue;
        }
        const std::size_t want = dim == 3 ? 4 : 3;
        if (fields.size() != want)
            throw ParseError("expected " + std::to_string(want) +
                                 " CSV fields",
                             line_no, 1);
        auto field_size = [&](std::size_t fi, const char* what) {
            Token t{fields[fi], line_no, fi + 1};
            return parse_size_tok(t, what);
        };
        Row r;
        r.i = field_size(0, "index");
        r.j = field_size(1, "index");
        r.k = dim == 3 ? field_size(2, "index") : 0;
        Token vt{fields[want - 1], line_no, want};
        r.value = parse_double_tok(vt);
        max_i = std::max(max_i, r.i);
        max_j = std::max(max_j, r.j);
        max_k = std::max(max_k, r.k);
        rows.push_back(r);
    }
    if (dim == 0) throw ParseError("empty CSV input", 1, 1);
    if (rows.empty()) throw ParseError("CSV has a header but no rows", 1, 1);

    ScalarGrid g;
    g.dim = dim;
    g.nx = max_i + 1;
    g.ny = max_j + 1;
    g.nz = dim == 3 ? max_k + 1 : 1;
    if (g.nx < 2 || g.ny < 2 || (dim == 3 && g.nz < 2))
        throw ParseError("need at least two nodes per axis", 1, 1);
    // Spacing is not stored in CSV; the unit-domain convention applies.
    g.h = 1.0 / double(g.nx - 1);
    g.values.assign(g.node_count(), 0.0);
    std::vector<char> seen(g.node_count(), 0);
    for (const Row& r : rows) {
        const std::size_t idx = g.index(r.i, r.j, r.k);
        if (seen[idx])
            throw ParseError("duplicate node in CSV", 1, 1);
        seen[idx] = 1;
        g.values[idx] = r.value;
    }
    for (std::size_t idx = 0; idx < seen.size(); ++idx)
        if (!seen[idx]) throw ParseError("CSV is missing nodes", 1, 1);
    return g;
}

}  // namespace

ScalarGrid read_grid(std::istream& in) {
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    std::size_t first = text.find_first_not_of(" \t\r\n\v\f");
    if (first == std::string::npos)
        throw ParseError("empty input", 1, 1);
    if (text.compare(first, 3, "LSG") == 0 &&
        (first + 3 == text.size() || text[first + 3] == ' ' ||
         text[first + 3] == '\t' || text[first + 3] == '\r' ||
         text[first + 3] == '\n'))
        return parse_lsg(text);
    return parse_csv(text);
}

ScalarGrid read_grid_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path + "' for reading");
    return read_grid(in);
}

void write_grid(const ScalarGrid& g, std::ostream& out) {
    validate_grid(g, "write_grid");
    out << "LSG " << g.dim << ' ' << g.nx << ' ' << g.ny;
    if (g.dim == 3) out << ' ' << g.nz;
    out << ' ' << format_double(g.h) << '\n';
    for (std::size_t k = 0; k < g.nz; ++k) {
        for (std::size_t j = 0; j < g.ny; ++j) {
            for (std::size_t i = 0; i < g.nx; ++i) {
                if (i != 0) out << ' ';
                out << format_double(g.at(i, j, k));
            }
            out << '\n';
        }
    }
}

void write_grid_file(const ScalarGrid& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot open '" + path + "' for writing");
    write_grid(g, out);
}

void write_grid_csv(const ScalarGrid& g, std::ostream& out) {
    validate_grid(g, "write_grid_csv");
    out << (g.dim == 3 ? "i,j,k,value\n" : "i,j,value\n");
    for (std::size_t k = 0; k < g.nz; ++k)
        for (std::size_t j = 0; j < g.ny; ++j)
            for (std::size_t i = 0; i < g.nx; ++i) {
                out << i << ',' << j;
                if (g.dim == 3) out << ',' << k;
                out << ',' << format_double(g.at(i, j, k)) << '\n';
            }
}

}  // namespace cutvol
