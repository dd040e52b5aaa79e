#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "ap3/grid.hpp"
#include "ap3/r3.hpp"

namespace ap3 {

// GridFn CSV: header "index,value", one row per n in 0..p-1, 17 significant
// digits. IndicatorSet CSV: header "index", member indices only; round trips
// bit-exactly.
void write_gridfn_csv(std::ostream& os, const GridFn& f);
void write_gridfn_csv(const std::string& path, const GridFn& f);
GridFn read_gridfn_csv(std::istream& is);
GridFn read_gridfn_csv(const std::string& path);

void write_indicator_csv(std::ostream& os, const IndicatorSet& s);
void write_indicator_csv(const std::string& path, const IndicatorSet& s);
IndicatorSet read_indicator_csv(std::istream& is, const PrimeField& field);
IndicatorSet read_indicator_csv(const std::string& path, const PrimeField& field);

void write_intset_csv(const std::string& path, const IntSet& s);

// Certificate store (CSV: n,value,method); only certified internal results
// are persisted. Loading tolerates a missing file.
struct CachedR3 {
    std::int64_t value = 0;
    R3Method method = R3Method::branch_and_bound;
};
std::map<std::int64_t, CachedR3> load_r3_cache(const std::string& path);
void append_r3_cache(const std::string& path, const R3Certificate& cert);

}  // namespace ap3
