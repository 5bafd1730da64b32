#include "ldpcdes/alist.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ldpcdes {

std::string to_alist(const ParityCheckMatrix& h) {
    std::vector<std::vector<int>> col_rows(h.cols);
    for (int r = 0; r < h.rows; ++r)
        for (int c : h.row_cols[r]) col_rows[c].push_back(r);

    size_t max_col = 0, max_row = 0;
    for (const auto& v : col_rows) max_col = std::max(max_col, v.size());
    for (const auto& v : h.row_cols) max_row = std::max(max_row, v.size());

    std::ostringstream out;
    out << h.cols << ' ' << h.rows << '\n';
    out << max_col << ' ' << max_row << '\n';
    for (int c = 0; c < h.cols; ++c) out << col_rows[c].size() << (c + 1 < h.cols ? ' ' : '\n');
    for (int r = 0; r < h.rows; ++r) out << h.row_cols[r].size() << (r + 1 < h.rows ? ' ' : '\n');
    auto emit = [&](const std::vector<int>& idx, size_t width) {
        for (size_t i = 0; i < width; ++i) out << (i < idx.size() ? idx[i] + 1 : 0) << (i + 1 < width ? ' ' : '\n');
    };
    for (int c = 0; c < h.cols; ++c) emit(col_rows[c], max_col);
    for (int r = 0; r < h.rows; ++r) emit(h.row_cols[r], max_row);
    return out.str();
}

ParityCheckMatrix parse_alist(const std::string& text) {
    std::istringstream in(text);
    long cols = 0, rows = 0, max_col = 0, max_row = 0;
    if (!(in >> cols >> rows >> max_col >> max_row) || cols < 1 || rows < 1)
        throw ValidationError("alist: malformed header");

    std::vector<long> col_deg(cols), row_deg(rows);
    for (long c = 0; c < cols; ++c)
        if (!(in >> col_deg[c])) throw ValidationError("alist: truncated column degrees");
    for (long r = 0; r < rows; ++r)
        if (!(in >> row_deg[r])) throw ValidationError("alist: truncated row degrees");

    ParityCheckMatrix h;
    h.rows = static_cast<int>(rows);
    h.cols = static_cast<int>(cols);
    h.row_cols.assign(rows, {});

    for (long c = 0; c < cols; ++c) {
        for (long i = 0; i < max_col; ++i) {
            long r = 0;
            if (!(in >> r)) throw ValidationError("alist: truncated column list");
            if (r == 0) continue;  // zero padding
            if (r < 1 || r > rows) throw ValidationError("alist: row index out of range");
            h.row_cols[r - 1].push_back(static_cast<int>(c));
        }
    }
    // Row lists are redundant with the column lists; read and cross-check.
    for (long r = 0; r < rows; ++r) {
        long seen = 0;
        for (long i = 0; i < max_row; ++i) {
            long c = 0;
            if (!(in >> c)) throw ValidationError("alist: truncated row list");
            if (c == 0) continue;
            if (c < 1 || c > cols) throw ValidationError("alist: column index out of range");
            ++seen;
        }
        if (seen != row_deg[r]) throw ValidationError("alist: row degree mismatch at row " + std::to_string(r + 1));
    }
    for (long r = 0; r < rows; ++r) {
        std::sort(h.row_cols[r].begin(), h.row_cols[r].end());
        if (static_cast<long>(h.row_cols[r].size()) != row_deg[r])
            throw ValidationError("alist: column lists disagree with row degrees at row " + std::to_string(r + 1));
    }
    return h;
}

void write_alist(const ParityCheckMatrix& h, const std::string& path) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw ComputeError("alist: cannot write " + tmp);
        out << to_alist(h);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw ComputeError("alist: cannot rename into " + path);
}

ParityCheckMatrix read_alist(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("alist: cannot open " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_alist(text.str());
}

TannerGraph graph_from_parity_check(const ParityCheckMatrix& h) {
    TannerGraph g;
    g.n = h.cols;
    g.vn_degrees.assign(h.cols, 0);
    g.checks.resize(h.rows);
    for (int r = 0; r < h.rows; ++r) {
        const int weight = static_cast<int>(h.row_cols[r].size());
        if (weight < 3)
            throw ValidationError("alist: row " + std::to_string(r + 1) + " has weight " + std::to_string(weight) +
                                  " < 3, not representable as an SPC check node");
        g.checks[r].code = ComponentCode::spc(weight);
        g.checks[r].sockets = h.row_cols[r];
        for (int c : h.row_cols[r]) ++g.vn_degrees[c];
    }
    g.rebuild_adjacency();
    return g;
}

}  // namespace ldpcdes
