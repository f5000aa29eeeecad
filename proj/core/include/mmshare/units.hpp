#pragma once

#include <cmath>

namespace mmshare {

// All power arithmetic inside the engine is done in linear mW; conversions
// from dB/dBm happen here and nowhere else.

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

}  // namespace mmshare
