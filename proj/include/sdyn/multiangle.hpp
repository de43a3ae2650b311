#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sdyn {

// Integer-coded sequence (m_0, m_1, ...) standing for the angle sequence
// (-m_0*theta, -m_1*theta, ...). Legal sequences interleave duplicated pairs
// with strict growth: m_{2i+1} = m_{2i} and m_{2i+2} > m_{2i+1}.
using MultiAngle = std::vector<std::int64_t>;

struct MultiAngleViolation {
    size_t index;         // first offending index
    std::string message;
};

// Empty result means the sequence is legal.
std::optional<MultiAngleViolation> check_multiangle(const MultiAngle& ma);

// Throws std::invalid_argument (message includes the first offending index)
// if the sequence is not legal.
void validate_multiangle(const MultiAngle& ma);

// One step of the angle shift map. Precondition: ma is legal and is neither
// (0) nor (0,0), where the map is undefined. If m_0 = m_1 = 0 the first two
// entries are dropped and the rest decrement by one; otherwise every entry
// decrements by one. Legality is preserved.
MultiAngle pi_step(const MultiAngle& ma);

// Full orbit of pi_step starting at ma (inclusive) and ending at the first
// terminal sequence (0) or (0,0). The orbit length is exactly
// last-entry + 1 states; a hard cap asserts this bound.
std::vector<MultiAngle> pi_orbit(const MultiAngle& ma);

// True iff an odd-length legal sequence is the address of a bubble that
// exists for a map whose second critical point has multi-angle `crit`:
// no pi-iterate (including the identity) of any prefix of ma may equal
// `crit`. Absent `crit` (the quadratic family) everything legal is allowed.
// Even-length ma throws std::invalid_argument.
bool is_legal_bubble_address(const MultiAngle& ma,
                             const std::optional<MultiAngle>& crit = std::nullopt);

// Lazily evaluated infinite legal sequence produced by a rule for the pair
// values e_0 < e_1 < ... (the sequence reads e_0,e_0,e_1,e_1,...). `depth`
// bounds how many entries consumers may request.
class MultiAngleStream {
public:
    MultiAngleStream(std::function<std::int64_t(size_t)> pair_rule, size_t depth);

    // Pair value e_i.
    std::int64_t pair_value(size_t i) const;
    // Odd-length prefix (e_0,e_0,...,e_{i-1},e_{i-1},e_i) with i+1 pair values.
    MultiAngle prefix(size_t pairs) const;
    size_t depth() const { return depth_; }

    // Stream whose pair increments repeat the given positive pattern starting
    // from e_0 = 0; such streams are periodic under the angle shift with
    // period = sum of the pattern. Pattern (1) gives e_i = i.
    static MultiAngleStream periodic_increments(std::vector<std::int64_t> pattern,
                                                size_t depth);

private:
    std::function<std::int64_t(size_t)> rule_;
    size_t depth_;
};

}  // namespace sdyn
