#include "iftt_pin/types.hpp"

#include <bit>

namespace iftt {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidConfig: return "invalid-config";
    case ErrorCode::OutOfRange: return "out-of-range";
    case ErrorCode::InvalidColoring: return "invalid-coloring";
    case ErrorCode::InconsistentHypothesis: return "inconsistent-hypothesis";
    case ErrorCode::InvalidState: return "invalid-state";
    case ErrorCode::NothingToSplit: return "nothing-to-split";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::Parse: return "parse";
    }
    return "unknown";
}

std::string_view to_string(Mode m) { return m == Mode::Classic ? "classic" : "selfcal"; }

Mode mode_from_string(std::string_view text)
{
    if (text == "classic") return Mode::Classic;
    if (text == "selfcal") return Mode::SelfCal;
    throw Error(ErrorCode::InvalidConfig, "unknown mode: " + std::string(text));
}

char to_char(Color c) { return c == Color::Yellow ? 'Y' : 'G'; }

std::optional<Color> color_from_char(char c)
{
    if (c == 'Y') return Color::Yellow;
    if (c == 'G') return Color::Grey;
    return std::nullopt;
}

Digit::Digit(int value)
{
    if (value < 0 || value >= kDigitCount)
        throw Error(ErrorCode::OutOfRange, "digit out of range: " + std::to_string(value));
    value_ = static_cast<std::uint8_t>(value);
}

DigitSet DigitSet::from_mask(std::uint16_t mask)
{
    DigitSet s;
    s.mask_ = mask & 0x3FF;
    return s;
}

DigitSet DigitSet::of(std::initializer_list<int> digits)
{
    DigitSet s;
    for (int d : digits) s.insert(Digit(d));
    return s;
}

int DigitSet::size() const { return std::popcount(mask_); }

std::vector<Digit> DigitSet::digits() const
{
    std::vector<Digit> out;
    for (int d = 0; d < kDigitCount; ++d)
        if ((mask_ >> d) & 1U) out.emplace_back(d);
    return out;
}

std::string DigitSet::to_string() const
{
    std::string out = "{";
    bool first = true;
    for (Digit d : digits()) {
        if (!first) out += ',';
        out += static_cast<char>('0' + d.value());
        first = false;
    }
    return out + "}";
}

Coloring::Coloring(const std::array<Color, kDigitCount>& colors) : colors_(colors)
{
    auto y = yellow().size();
    if (y == 0 || y == kDigitCount)
        throw Error(ErrorCode::InvalidColoring, "coloring must contain both colors");
}

Coloring Coloring::from_yellow(DigitSet yellow)
{
    std::array<Color, kDigitCount> colors{};
    for (int d = 0; d < kDigitCount; ++d)
        colors[d] = yellow.contains(Digit(d)) ? Color::Yellow : Color::Grey;
    return Coloring(colors);
}

Coloring Coloring::parse(std::string_view text)
{
    if (text.size() != kDigitCount)
        throw Error(ErrorCode::InvalidColoring, "coloring must have 10 characters, got " + std::to_string(text.size()));
    std::array<Color, kDigitCount> colors{};
    for (int d = 0; d < kDigitCount; ++d) {
        auto c = color_from_char(text[d]);
        if (!c) throw Error(ErrorCode::InvalidColoring, "coloring characters must be Y or G");
        colors[d] = *c;
    }
    return Coloring(colors);
}

DigitSet Coloring::yellow() const
{
    std::uint16_t mask = 0;
    for (int d = 0; d < kDigitCount; ++d)
        if (colors_[d] == Color::Yellow) mask |= static_cast<std::uint16_t>(1U << d);
    return DigitSet::from_mask(mask);
}

std::string Coloring::to_string() const
{
    std::string out;
    for (Color c : colors_) out += to_char(c);
    return out;
}

ButtonMapping::ButtonMapping(int n_buttons)
{
    if (n_buttons < 1 || n_buttons > kMaxButtons)
        throw Error(ErrorCode::InvalidConfig, "button count out of range: " + std::to_string(n_buttons));
    colors_.resize(static_cast<std::size_t>(n_buttons));
}

ButtonMapping ButtonMapping::parse(std::string_view text)
{
    ButtonMapping m(static_cast<int>(text.size()));
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '?') continue;
        auto c = color_from_char(text[i]);
        if (!c) throw Error(ErrorCode::Parse, "mapping characters must be Y, G or ?");
        m.colors_[i] = *c;
    }
    return m;
}

void ButtonMapping::check(ButtonId b) const
{
    if (b.index < 0 || b.index >= n_buttons())
        throw Error(ErrorCode::OutOfRange, "button index out of range: " + std::to_string(b.index));
}

std::optional<Color> ButtonMapping::get(ButtonId b) const
{
    check(b);
    return colors_[static_cast<std::size_t>(b.index)];
}

void ButtonMapping::set(ButtonId b, Color c)
{
    check(b);
    colors_[static_cast<std::size_t>(b.index)] = c;
}

void ButtonMapping::clear(ButtonId b)
{
    check(b);
    colors_[static_cast<std::size_t>(b.index)].reset();
}

int ButtonMapping::assigned_count() const
{
    int n = 0;
    for (const auto& c : colors_) n += c.has_value();
    return n;
}

bool ButtonMapping::is_valid_total() const
{
    return is_total() && !buttons_with(Color::Yellow).empty() && !buttons_with(Color::Grey).empty();
}

bool ButtonMapping::extendable_to_valid_total() const
{
    if (n_buttons() < 2) return false;
    if (!is_total()) {
        // One free button can take whichever color is missing, unless
        // it is the only free one and both colors are already missing.
        int free = n_buttons() - assigned_count();
        bool has_y = !buttons_with(Color::Yellow).empty();
        bool has_g = !buttons_with(Color::Grey).empty();
        return free >= 2 || has_y || has_g;
    }
    return is_valid_total();
}

std::vector<ButtonId> ButtonMapping::buttons_with(Color c) const
{
    std::vector<ButtonId> out;
    for (int i = 0; i < n_buttons(); ++i)
        if (colors_[static_cast<std::size_t>(i)] == c) out.push_back(ButtonId{i});
    return out;
}

bool ButtonMapping::is_restriction_of(const ButtonMapping& other) const
{
    if (other.n_buttons() != n_buttons()) return false;
    for (std::size_t i = 0; i < colors_.size(); ++i)
        if (colors_[i] && colors_[i] != other.colors_[i]) return false;
    return true;
}

bool ButtonMapping::conflicts_with(const ButtonMapping& other) const
{
    if (other.n_buttons() != n_buttons())
        throw Error(ErrorCode::InvalidArgument, "mappings have different button counts");
    for (std::size_t i = 0; i < colors_.size(); ++i)
        if (colors_[i] && other.colors_[i] && *colors_[i] != *other.colors_[i]) return true;
    return false;
}

ButtonMapping ButtonMapping::merged(const ButtonMapping& other) const
{
    if (conflicts_with(other))
        throw Error(ErrorCode::InvalidArgument, "cannot merge conflicting mappings");
    ButtonMapping out = *this;
    for (std::size_t i = 0; i < colors_.size(); ++i)
        if (!out.colors_[i]) out.colors_[i] = other.colors_[i];
    return out;
}

std::string ButtonMapping::to_string() const
{
    std::string out;
    for (const auto& c : colors_) out += c ? to_char(*c) : '?';
    return out;
}

ButtonMapping classic_mapping()
{
    ButtonMapping m(2);
    m.set(ButtonId{0}, Color::Yellow);
    m.set(ButtonId{1}, Color::Grey);
    return m;
}

}  // namespace iftt
