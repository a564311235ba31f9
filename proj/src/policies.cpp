#include "iftt_pin/policies.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace iftt {

namespace {

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng)
{
    // Fisher-Yates with our own bounded draw; std::shuffle is not
    // specified tightly enough to reproduce across standard libraries.
    for (std::size_t i = v.size(); i > 1; --i) {
        auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace

std::string_view to_string(PolicyKind p)
{
    return p == PolicyKind::Bisect ? "bisect" : "random_balanced";
}

PolicyKind policy_from_string(std::string_view text)
{
    if (text == "random_balanced") return PolicyKind::RandomBalanced;
    if (text == "bisect") return PolicyKind::Bisect;
    throw Error(ErrorCode::InvalidConfig, "unknown policy: " + std::string(text));
}

Coloring random_balanced_coloring(Rng& rng)
{
    std::vector<int> order(kDigitCount);
    for (int d = 0; d < kDigitCount; ++d) order[d] = d;
    shuffle(order, rng);
    DigitSet yellow;
    for (int i = 0; i < kDigitCount / 2; ++i) yellow.insert(Digit(order[i]));
    return Coloring::from_yellow(yellow);
}

Coloring bisect_coloring(DigitSet candidates, Rng& rng)
{
    if (candidates.size() < 2)
        throw Error(ErrorCode::NothingToSplit, "bisect needs at least two candidates, got " + candidates.to_string());

    std::vector<Digit> inside = candidates.digits();
    std::vector<Digit> outside = DigitSet::from_mask(static_cast<std::uint16_t>(~candidates.mask())).digits();
    shuffle(inside, rng);
    shuffle(outside, rng);

    const std::size_t half = inside.size() / 2;
    const bool larger_yellow = inside.size() % 2 == 1 && rng.below(2) == 1;
    const std::size_t yellow_inside = larger_yellow ? inside.size() - half : half;

    DigitSet yellow;
    for (std::size_t i = 0; i < yellow_inside; ++i) yellow.insert(inside[i]);
    for (std::size_t i = 0; yellow.size() < kDigitCount / 2; ++i) yellow.insert(outside[i]);
    return Coloring::from_yellow(yellow);
}

Coloring next_coloring(PolicyKind policy, const BeliefState& belief, Rng& rng)
{
    if (policy == PolicyKind::Bisect && !colors_known(belief)) return random_balanced_coloring(rng);
    return next_coloring(policy, consistent_set(belief), rng);
}

Coloring next_coloring(PolicyKind policy, DigitSet candidates, Rng& rng)
{
    if (candidates.empty()) throw Error(ErrorCode::InvalidArgument, "candidate set is empty");
    switch (policy) {
    case PolicyKind::Bisect: return bisect_coloring(candidates, rng);
    case PolicyKind::RandomBalanced: break;
    }
    return random_balanced_coloring(rng);
}

}  // namespace iftt
