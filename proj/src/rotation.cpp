#include "sdyn/rotation.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace sdyn {

namespace {

// Evaluate [0; a_1, ..., a_n] from the bottom of the fraction upward.
double eval_cf(const std::vector<int>& terms) {
    double v = std::numeric_limits<double>::infinity();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        v = static_cast<double>(*it) + 1.0 / v;
    }
    return 1.0 / v;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw std::invalid_argument("empty continued-fraction entry");
        size_t pos = 0;
        int v = std::stoi(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("bad continued-fraction entry: " + item);
        out.push_back(v);
    }
    return out;
}

}  // namespace

RotationNumber RotationNumber::from_quadratic_surd(std::vector<int> preperiod,
                                                   std::vector<int> period) {
    if (period.empty()) {
        throw std::invalid_argument("period must be non-empty (rational numbers are not bounded-type irrationals)");
    }
    for (int a : preperiod) {
        if (a < 1) throw std::invalid_argument("continued-fraction coefficients must be >= 1");
    }
    for (int a : period) {
        if (a < 1) throw std::invalid_argument("continued-fraction coefficients must be >= 1");
    }
    RotationNumber r;
    r.preperiod_ = std::move(preperiod);
    r.period_ = std::move(period);
    // 80 unrolled terms put the truncation error far below double precision
    // (every coefficient is >= 1, so convergent denominators grow at least
    // like Fibonacci numbers).
    r.value_ = eval_cf(r.cf_terms(80));
    r.bound_ = 0;
    for (int a : r.preperiod_) r.bound_ = std::max(r.bound_, a);
    for (int a : r.period_) r.bound_ = std::max(r.bound_, a);
    return r;
}

RotationNumber RotationNumber::golden() {
    return from_quadratic_surd({}, {1});
}

RotationNumber RotationNumber::sqrt2_over_2() {
    return from_quadratic_surd({1}, {2});
}

RotationNumber RotationNumber::parse(const std::string& text) {
    if (text == "golden") return golden();
    if (text == "sqrt2over2") return sqrt2_over_2();
    auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument(
            "rotation number must be 'golden', 'sqrt2over2', or 'pre:period' CF syntax");
    }
    return from_quadratic_surd(parse_int_list(text.substr(0, colon)),
                               parse_int_list(text.substr(colon + 1)));
}

std::vector<int> RotationNumber::cf_terms(int n) const {
    if (n < 0) throw std::invalid_argument("cf_terms: n must be >= 0");
    std::vector<int> out;
    out.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        size_t idx = static_cast<size_t>(i);
        if (idx < preperiod_.size()) {
            out.push_back(preperiod_[idx]);
        } else {
            out.push_back(period_[(idx - preperiod_.size()) % period_.size()]);
        }
    }
    return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> RotationNumber::convergents(int n) const {
    if (n < 1) throw std::invalid_argument("convergents: n must be >= 1");
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    out.reserve(static_cast<size_t>(n));
    auto terms = cf_terms(n);
    // Seeds p_{-1}/q_{-1} = 1/0 and p_0/q_0 = 0/1.
    std::int64_t pm1 = 1, qm1 = 0, p0 = 0, q0 = 1;
    const std::int64_t limit = std::numeric_limits<std::int64_t>::max();
    for (int i = 0; i < n; ++i) {
        std::int64_t a = terms[static_cast<size_t>(i)];
        if (q0 > (limit - qm1) / a || p0 > (limit - pm1) / a) {
            throw std::overflow_error("convergents: denominator exceeds int64 range");
        }
        std::int64_t p = a * p0 + pm1;
        std::int64_t q = a * q0 + qm1;
        out.emplace_back(p, q);
        pm1 = p0; qm1 = q0; p0 = p; q0 = q;
    }
    return out;
}

Angle RotationNumber::legal_angle(std::int64_t m) const {
    if (m < 0) throw std::invalid_argument("legal_angle: m must be >= 0");
    return Angle::from_turns(-static_cast<double>(m) * value_);
}

cplx RotationNumber::multiplier() const {
    return unit(value_);
}

std::string RotationNumber::describe() const {
    std::ostringstream os;
    os << "[0;";
    for (size_t i = 0; i < preperiod_.size(); ++i) os << (i ? "," : " ") << preperiod_[i];
    os << " (";
    for (size_t i = 0; i < period_.size(); ++i) os << (i ? "," : "") << period_[i];
    os << ")*]";
    return os.str();
}

}  // namespace sdyn
