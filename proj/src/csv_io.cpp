#include "netwatch/csv_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace netwatch {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

long parse_long(const std::string& s, long line_no, const char* what) {
    try {
        size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("bad ") + what + " value '" + s + "'", line_no);
    }
}

double parse_double(const std::string& s, long line_no, const char* what) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("bad ") + what + " value '" + s + "'", line_no);
    }
}

struct EdgeRows {
    // per t: map (src,dst) -> value, 1-based ids
    std::map<int, std::map<std::pair<int, int>, double>> by_t;
    int max_node = 0;
};

EdgeRows read_edge_csv(const std::string& path, const char* value_header, bool sum_duplicates) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    long line_no = 0;
    if (!std::getline(in, line)) throw ParseError("empty file", 1);
    ++line_no;
    const std::string expected = std::string("t,src,dst,") + value_header;
    {
        std::string stripped = line;
        stripped.erase(std::remove(stripped.begin(), stripped.end(), '\r'), stripped.end());
        if (stripped != expected)
            throw ParseError("expected header '" + expected + "', found '" + stripped + "'",
                             line_no);
    }
    EdgeRows rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto f = split_fields(line);
        if (f.size() != 4) throw ParseError("expected 4 fields", line_no);
        const long t = parse_long(f[0], line_no, "t");
        const long src = parse_long(f[1], line_no, "src");
        const long dst = parse_long(f[2], line_no, "dst");
        const double val = parse_double(f[3], line_no, value_header);
        if (t < 1) throw ParseError("t must be >= 1", line_no);
        if (src < 1 || dst < 1) throw ParseError("node ids are 1-based", line_no);
        auto key = std::make_pair(static_cast<int>(src), static_cast<int>(dst));
        auto& cell = rows.by_t[static_cast<int>(t)][key];
        cell = sum_duplicates ? cell + val : val;
        rows.max_node = std::max({rows.max_node, static_cast<int>(src), static_cast<int>(dst)});
    }
    if (rows.by_t.empty()) throw ParseError("no data rows", line_no);
    return rows;
}

void check_contiguous(const EdgeRows& rows) {
    int expect = 1;
    for (const auto& [t, _] : rows.by_t) {
        if (t != expect)
            throw NonContiguousTime("time indices must be contiguous from 1; missing t=" +
                                    std::to_string(expect));
        ++expect;
    }
}

}  // namespace

NetworkSeries parse_series(const std::string& path) {
    EdgeRows rows = read_edge_csv(path, "count", /*sum_duplicates=*/true);
    check_contiguous(rows);
    const int n = std::max(rows.max_node, 2);
    NetworkSeries series;
    for (const auto& [t, edges] : rows.by_t) {
        NetworkSnapshot snap;
        snap.t = t;
        snap.n = n;
        snap.counts = CountMat(n);
        for (const auto& [key, val] : edges) {
            const auto [src, dst] = key;
            const long count = static_cast<long>(val);
            if (count < 0)
                throw NegativeCount("negative count at t=" + std::to_string(t) + " (" +
                                    std::to_string(src) + "," + std::to_string(dst) + ")");
            if (src != dst) snap.counts(src - 1, dst - 1) = count;
        }
        series.snapshots.push_back(std::move(snap));
    }
    series.validate();
    return series;
}

void write_series(const NetworkSeries& series, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "t,src,dst,count\n";
    for (const auto& snap : series.snapshots) {
        for (int i = 0; i < snap.n; ++i)
            for (int j = 0; j < snap.n; ++j)
                if (snap.counts(i, j) != 0)
                    out << snap.t << ',' << i + 1 << ',' << j + 1 << ',' << snap.counts(i, j)
                        << '\n';
    }
    if (!out) throw IoError("write failed for " + path);
}

MeanModel parse_means(const std::string& path) {
    EdgeRows rows = read_edge_csv(path, "lambda", /*sum_duplicates=*/false);
    check_contiguous(rows);
    const int n = std::max(rows.max_node, 2);
    std::vector<Mat> per_t;
    per_t.reserve(rows.by_t.size());
    for (const auto& [t, edges] : rows.by_t) {
        Mat m(n, 0.0);
        for (const auto& [key, val] : edges) {
            const auto [src, dst] = key;
            m(src - 1, dst - 1) = val;
        }
        per_t.push_back(std::move(m));
    }
    return MeanModel::per_edge(std::move(per_t));
}

void write_flags(const std::vector<FlagEvent>& events, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "t,statistic,team_or_leader,value,boundary,flagged\n";
    char buf[64];
    for (const auto& ev : events) {
        out << ev.t << ',' << ev.statistic << ',' << ev.target << ',';
        std::snprintf(buf, sizeof buf, "%.10g", ev.value);
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.10g", ev.boundary);
        out << buf << ',' << (ev.flagged ? "true" : "false") << '\n';
    }
    if (!out) throw IoError("write failed for " + path);
}

std::vector<FlagEvent> read_flags(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    long line_no = 0;
    if (!std::getline(in, line)) throw ParseError("empty file", 1);
    ++line_no;
    std::vector<FlagEvent> events;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto f = split_fields(line);
        if (f.size() != 6) throw ParseError("expected 6 fields", line_no);
        FlagEvent ev;
        ev.t = static_cast<int>(parse_long(f[0], line_no, "t"));
        ev.statistic = f[1];
        ev.target = f[2];
        ev.value = parse_double(f[3], line_no, "value");
        ev.boundary = parse_double(f[4], line_no, "boundary");
        if (f[5] == "true") ev.flagged = true;
        else if (f[5] == "false") ev.flagged = false;
        else throw ParseError("flagged must be true/false", line_no);
        events.push_back(std::move(ev));
    }
    return events;
}

}  // namespace netwatch
