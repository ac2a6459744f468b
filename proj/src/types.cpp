#include "lbee/types.hpp"

#include <cmath>

#include "lbee/errors.hpp"

namespace lbee {

const char* to_string(SelectMethod m) {
    switch (m) {
        case SelectMethod::TopS: return "TopS";
        case SelectMethod::SetDiff: return "SetDiff";
        case SelectMethod::PDiff: return "PDiff";
        case SelectMethod::FPDiff: return "FPDiff";
    }
    return "?";
}

const char* to_string(SplitMode m) {
    return m == SplitMode::Score ? "score" : "outcome";
}

SelectMethod select_method_from_string(const std::string& s) {
    if (s == "TopS" || s == "tops") return SelectMethod::TopS;
    if (s == "SetDiff" || s == "setdiff") return SelectMethod::SetDiff;
    if (s == "PDiff" || s == "pdiff") return SelectMethod::PDiff;
    if (s == "FPDiff" || s == "fpdiff") return SelectMethod::FPDiff;
    throw validation_error("UnknownMethod", "unknown selection method: " + s);
}

SplitMode split_mode_from_string(const std::string& s) {
    if (s == "score") return SplitMode::Score;
    if (s == "outcome") return SplitMode::Outcome;
    throw validation_error("UnknownSplitMode", "unknown split mode: " + s);
}

void RunConfig::validate() const {
    if (a < 0.0) throw validation_error("BadConfig", "a must be >= 0");
    if (o < 0.0) throw validation_error("BadConfig", "o must be >= 0");
    if (c_easy < 1) throw validation_error("BadConfig", "c_easy must be >= 1");
    if (c_hard < 1) throw validation_error("BadConfig", "c_hard must be >= 1");
    if (k < 1) throw validation_error("BadConfig", "k must be >= 1");
    if (!std::isfinite(tau)) throw validation_error("BadConfig", "tau must be finite");
    if (beta_override && *beta_override < 0.0)
        throw validation_error("BadConfig", "beta must be >= 0");
}

}  // namespace lbee
