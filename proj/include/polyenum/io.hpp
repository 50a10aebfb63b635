#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "polyenum/representation.hpp"

namespace polyenum {

/**
 * File grammar (one construct per line, blank lines ignored):
 *
 *   [name]
 *   H-representation | V-representation
 *   [linearity k i1 ... ik]
 *   begin
 *   m n rational
 *   <m rows of n whitespace-separated rational tokens>
 *   end
 *   [trailing lines, ignored with a warning]
 *
 * Rational tokens are "num" or "num/den" with an optional leading minus
 * and den > 0 after canonicalization.  Values are canonicalized on read,
 * so parse(serialize(r)) == r for canonical r.
 */

namespace detail {

inline std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

} // namespace detail

inline Representation parse(std::istream& in, Diagnostics* diag = nullptr) {
    std::string line;
    std::size_t lineNo = 0;
    auto nextLine = [&](std::vector<std::string>& toks) -> bool {
        while (std::getline(in, line)) {
            ++lineNo;
            toks = detail::tokens_of(line);
            if (!toks.empty()) return true;
        }
        ++lineNo; // at EOF, errors point at the line where the construct was expected
        return false;
    };

    std::vector<std::string> toks;
    if (!nextLine(toks)) throw ParseError("empty input", lineNo);

    Representation rep;
    auto isKindLine = [](const std::vector<std::string>& t) {
        return t.size() == 1 && (t[0] == "H-representation" || t[0] == "V-representation");
    };

    if (!isKindLine(toks)) {
        std::string trimmed = line;
        const auto b = trimmed.find_first_not_of(" \t\r");
        const auto e = trimmed.find_last_not_of(" \t\r");
        rep.name = trimmed.substr(b, e - b + 1);
        if (!nextLine(toks)) throw ParseError("expected H-representation or V-representation", lineNo);
    }
    if (!isKindLine(toks))
        throw ParseError("expected H-representation or V-representation", lineNo);
    rep.kind = toks[0][0] == 'H' ? ReprKind::H : ReprKind::V;

    if (!nextLine(toks)) throw ParseError("expected begin", lineNo);
    std::vector<std::size_t> linearity;
    if (toks[0] == "linearity") {
        if (toks.size() < 2) throw ParseError("linearity line missing count", lineNo);
        long k = 0;
        try {
            k = std::stol(toks[1]);
        } catch (...) {
            throw ParseError("malformed linearity count '" + toks[1] + "'", lineNo);
        }
        if (k < 1) throw ParseError("linearity count must be positive", lineNo);
        if (toks.size() != static_cast<std::size_t>(k) + 2)
            throw ParseError("linearity line lists " + std::to_string(toks.size() - 2) +
                                 " indices, expected " + std::to_string(k),
                             lineNo);
        for (long i = 0; i < k; ++i) {
            long idx = 0;
            try {
                idx = std::stol(toks[2 + i]);
            } catch (...) {
                throw ParseError("malformed linearity index '" + toks[2 + i] + "'", lineNo);
            }
            if (idx < 1) throw ParseError("linearity indices must be positive", lineNo);
            linearity.push_back(static_cast<std::size_t>(idx));
        }
        std::vector<std::size_t> sorted = linearity;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ParseError("duplicate linearity index", lineNo);
        if (!nextLine(toks)) throw ParseError("expected begin", lineNo);
    }

    if (toks.size() != 1 || toks[0] != "begin")
        throw ParseError("expected begin", lineNo);

    if (!nextLine(toks)) throw ParseError("expected dimension line 'm n rational'", lineNo);
    if (toks.size() != 3 || toks[2] != "rational")
        throw ParseError("expected dimension line 'm n rational'", lineNo);
    long m = 0, n = 0;
    try {
        m = std::stol(toks[0]);
        n = std::stol(toks[1]);
    } catch (...) {
        throw ParseError("malformed dimensions '" + toks[0] + " " + toks[1] + "'", lineNo);
    }
    if (m < 1) throw ParseError("row count must be at least 1", lineNo);
    if (n < 2) throw ParseError("column count must be at least 2", lineNo);

    rep.rows = Matrix<BigRat>(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
    for (long i = 0; i < m; ++i) {
        if (!nextLine(toks))
            throw ParseError("unexpected end of input after " + std::to_string(i) + " of " +
                                 std::to_string(m) + " rows",
                             lineNo);
        if (toks.size() != static_cast<std::size_t>(n))
            throw ParseError("row has " + std::to_string(toks.size()) + " entries, expected " +
                                 std::to_string(n),
                             lineNo);
        for (long j = 0; j < n; ++j) {
            try {
                rep.rows(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                    big_from_token(toks[static_cast<std::size_t>(j)]);
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what(), lineNo);
            }
        }
    }

    if (!nextLine(toks) || toks.size() != 1 || toks[0] != "end")
        throw ParseError("expected end", lineNo);

    while (nextLine(toks)) {
        if (diag) diag->warnings.push_back("line " + std::to_string(lineNo) + " ignored: " + line);
    }

    for (std::size_t idx : linearity) rep.linearity.insert(idx);
    return rep;
}

inline Representation parse(const std::string& text, Diagnostics* diag = nullptr) {
    std::istringstream in(text);
    return parse(in, diag);
}

inline std::string serialize_row(const Vec<BigRat>& row) {
    std::string out;
    for (std::size_t j = 0; j < row.size(); ++j) {
        if (j) out += ' ';
        out += rat_token(row[j]);
    }
    return out;
}

inline void serialize(const Representation& r, std::ostream& out) {
    if (!r.name.empty()) out << r.name << '\n';
    out << (r.kind == ReprKind::H ? "H-representation" : "V-representation") << '\n';
    if (!r.linearity.empty()) {
        out << "linearity " << r.linearity.size();
        for (std::size_t idx : r.linearity) out << ' ' << idx;
        out << '\n';
    }
    out << "begin\n" << r.m() << ' ' << r.n() << " rational\n";
    for (std::size_t i = 0; i < r.m(); ++i) out << serialize_row(r.rows.row(i)) << '\n';
    out << "end\n";
}

inline std::string serialize(const Representation& r) {
    std::ostringstream out;
    serialize(r, out);
    return out.str();
}

} // namespace polyenum
