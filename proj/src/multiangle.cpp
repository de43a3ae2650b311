#include "sdyn/multiangle.hpp"

#include <cassert>
#include <sstream>

namespace sdyn {

std::optional<MultiAngleViolation> check_multiangle(const MultiAngle& ma) {
    if (ma.empty()) return MultiAngleViolation{0, "sequence must be non-empty"};
    for (size_t i = 0; i < ma.size(); ++i) {
        if (ma[i] < 0) return MultiAngleViolation{i, "entries must be >= 0"};
        if (i % 2 == 1 && ma[i] != ma[i - 1]) {
            return MultiAngleViolation{i, "odd-index entry must equal its predecessor"};
        }
        if (i % 2 == 0 && i >= 2 && ma[i] <= ma[i - 1]) {
            return MultiAngleViolation{i, "even-index entry must exceed its predecessor"};
        }
    }
    return std::nullopt;
}

void validate_multiangle(const MultiAngle& ma) {
    if (auto v = check_multiangle(ma)) {
        std::ostringstream os;
        os << "illegal multi-angle at index " << v->index << ": " << v->message;
        throw std::invalid_argument(os.str());
    }
}

static bool is_terminal(const MultiAngle& ma) {
    return (ma.size() == 1 && ma[0] == 0) || (ma.size() == 2 && ma[0] == 0 && ma[1] == 0);
}

MultiAngle pi_step(const MultiAngle& ma) {
    validate_multiangle(ma);
    if (is_terminal(ma)) {
        throw std::domain_error("pi_step is undefined on (0) and (0,0)");
    }
    MultiAngle out;
    if (ma.size() >= 2 && ma[0] == 0 && ma[1] == 0) {
        out.assign(ma.begin() + 2, ma.end());
    } else {
        out = ma;
    }
    for (auto& m : out) --m;
    return out;
}

std::vector<MultiAngle> pi_orbit(const MultiAngle& ma) {
    validate_multiangle(ma);
    std::vector<MultiAngle> orbit{ma};
    // The last entry decrements by exactly one per step and no non-terminal
    // legal sequence ends in 0, so the orbit takes exactly ma.back() steps.
    const size_t cap = static_cast<size_t>(ma.back()) + 2;
    while (!is_terminal(orbit.back())) {
        orbit.push_back(pi_step(orbit.back()));
        assert(orbit.size() <= cap && "pi_orbit exceeded its termination bound");
        if (orbit.size() > cap) throw std::runtime_error("pi_orbit failed to terminate");
    }
    return orbit;
}

bool is_legal_bubble_address(const MultiAngle& ma,
                             const std::optional<MultiAngle>& crit) {
    validate_multiangle(ma);
    if (ma.size() % 2 == 0) {
        throw std::invalid_argument("bubble addresses must have odd length");
    }
    if (!crit) return true;
    for (size_t len = 1; len <= ma.size(); ++len) {
        MultiAngle prefix(ma.begin(), ma.begin() + static_cast<long>(len));
        // Walk prefix, pi(prefix), pi^2(prefix), ... down to a terminal state.
        MultiAngle cur = std::move(prefix);
        for (;;) {
            if (cur == *crit) return false;
            if (is_terminal(cur)) break;
            cur = pi_step(cur);
        }
    }
    return true;
}

MultiAngleStream::MultiAngleStream(std::function<std::int64_t(size_t)> pair_rule,
                                   size_t depth)
    : rule_(std::move(pair_rule)), depth_(depth) {
    if (!rule_) throw std::invalid_argument("stream rule must be callable");
    if (depth_ == 0) throw std::invalid_argument("stream depth must be positive");
}

std::int64_t MultiAngleStream::pair_value(size_t i) const {
    if (i >= depth_) throw std::out_of_range("stream index beyond truncation depth");
    std::int64_t v = rule_(i);
    if (v < 0) throw std::domain_error("stream rule produced a negative entry");
    if (i > 0 && rule_(i - 1) >= v) {
        throw std::domain_error("stream rule must be strictly increasing");
    }
    return v;
}

MultiAngle MultiAngleStream::prefix(size_t pairs) const {
    if (pairs == 0) throw std::invalid_argument("prefix needs at least one pair value");
    MultiAngle out;
    out.reserve(2 * pairs - 1);
    for (size_t i = 0; i + 1 < pairs; ++i) {
        std::int64_t v = pair_value(i);
        out.push_back(v);
        out.push_back(v);
    }
    out.push_back(pair_value(pairs - 1));
    return out;
}

MultiAngleStream MultiAngleStream::periodic_increments(std::vector<std::int64_t> pattern,
                                                       size_t depth) {
    if (pattern.empty()) throw std::invalid_argument("increment pattern must be non-empty");
    for (auto d : pattern) {
        if (d < 1) throw std::invalid_argument("increments must be >= 1");
    }
    auto rule = [pattern = std::move(pattern)](size_t i) {
        std::int64_t v = 0;
        for (size_t j = 0; j < i; ++j) v += pattern[j % pattern.size()];
        return v;
    };
    return MultiAngleStream(std::move(rule), depth);
}

}  // namespace sdyn
