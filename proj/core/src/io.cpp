#include "ap3/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace ap3 {
namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open " + path);
    return is;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw Error("cannot write " + path);
    return os;
}

}  // namespace

void write_gridfn_csv(std::ostream& os, const GridFn& f) {
    os << "index,value\n";
    for (std::int64_t n = 0; n < f.p(); ++n)
        os << n << ',' << format_double(f.values[static_cast<std::size_t>(n)]) << '\n';
}

void write_gridfn_csv(const std::string& path, const GridFn& f) {
    auto os = open_out(path);
    write_gridfn_csv(os, f);
}

GridFn read_gridfn_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("index,value", 0) != 0)
        throw Error("expected header index,value");
    std::vector<double> vals;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw Error("malformed GridFn row: " + line);
        const auto idx = std::stoll(line.substr(0, comma));
        if (idx != static_cast<std::int64_t>(vals.size()))
            throw Error("GridFn rows must be consecutive from 0");
        vals.push_back(std::stod(line.substr(comma + 1)));
    }
    GridFn f(make_field(static_cast<std::int64_t>(vals.size())));
    f.values = std::move(vals);
    return f;
}

GridFn read_gridfn_csv(const std::string& path) {
    auto is = open_in(path);
    return read_gridfn_csv(is);
}

void write_indicator_csv(std::ostream& os, const IndicatorSet& s) {
    os << "index\n";
    for (auto e : s.elements()) os << e << '\n';
}

void write_indicator_csv(const std::string& path, const IndicatorSet& s) {
    auto os = open_out(path);
    write_indicator_csv(os, s);
}

IndicatorSet read_indicator_csv(std::istream& is, const PrimeField& field) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("index", 0) != 0)
        throw Error("expected header index");
    IndicatorSet s(field);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto v = std::stoll(line);
        if (v < 0 || v >= field.p) throw Error("indicator element out of range");
        s.insert(v);
    }
    return s;
}

IndicatorSet read_indicator_csv(const std::string& path, const PrimeField& field) {
    auto is = open_in(path);
    return read_indicator_csv(is, field);
}

void write_intset_csv(const std::string& path, const IntSet& s) {
    auto os = open_out(path);
    os << "element\n";
    for (auto m : s.members) os << m << '\n';
}

std::map<std::int64_t, CachedR3> load_r3_cache(const std::string& path) {
    std::map<std::int64_t, CachedR3> out;
    std::ifstream is(path);
    if (!is) return out;
    std::string line;
    std::getline(is, line);  // header
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string n, value, method;
        std::getline(ss, n, ',');
        std::getline(ss, value, ',');
        std::getline(ss, method, ',');
        if (method != "exhaustive" && method != "branch_and_bound")
            throw Error("certificate cache holds a non-internal method: " + method);
        out[std::stoll(n)] = {std::stoll(value), method == "exhaustive"
                                                     ? R3Method::exhaustive
                                                     : R3Method::branch_and_bound};
    }
    return out;
}

void append_r3_cache(const std::string& path, const R3Certificate& cert) {
    if (!cert.certified) return;  // only exhausted searches may be persisted
    auto existing = load_r3_cache(path);
    if (existing.count(cert.n)) {
        if (existing[cert.n].value != cert.value)
            throw Error("certificate cache disagrees with a fresh computation");
        return;
    }
    const bool fresh = existing.empty();
    std::ofstream os(path, std::ios::app);
    if (!os) throw Error("cannot write " + path);
    if (fresh) os << "n,value,method\n";
    os << cert.n << ',' << cert.value << ',' << to_string(cert.method) << '\n';
}

}  // namespace ap3
