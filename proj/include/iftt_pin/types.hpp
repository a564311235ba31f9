#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iftt_pin/error.hpp"

namespace iftt {

inline constexpr int kDigitCount = 10;

// Evidence masks are 32-bit, one bit per button.
inline constexpr int kMaxButtons = 32;

enum class Mode { Classic, SelfCal };

std::string_view to_string(Mode m);  // "classic" | "selfcal"
Mode mode_from_string(std::string_view text);

// Yellow sorts before Grey; serialized as 'Y' / 'G'.
enum class Color : std::uint8_t { Yellow = 0, Grey = 1 };

constexpr Color opposite(Color c) { return c == Color::Yellow ? Color::Grey : Color::Yellow; }
char to_char(Color c);
std::optional<Color> color_from_char(char c);

class Digit {
public:
    explicit Digit(int value);

    int value() const { return value_; }

    friend auto operator<=>(const Digit&, const Digit&) = default;

private:
    std::uint8_t value_;
};

/// Set of digits backed by a 10-bit mask.
class DigitSet {
public:
    constexpr DigitSet() = default;
    static DigitSet all() { return from_mask(0x3FF); }
    static DigitSet from_mask(std::uint16_t mask);
    static DigitSet of(std::initializer_list<int> digits);

    std::uint16_t mask() const { return mask_; }
    bool contains(Digit d) const { return (mask_ >> d.value()) & 1U; }
    void insert(Digit d) { mask_ |= static_cast<std::uint16_t>(1U << d.value()); }
    void erase(Digit d) { mask_ &= static_cast<std::uint16_t>(~(1U << d.value())); }
    int size() const;
    bool empty() const { return mask_ == 0; }
    bool is_subset_of(DigitSet other) const { return (mask_ & ~other.mask_) == 0; }

    // Ascending order.
    std::vector<Digit> digits() const;
    std::string to_string() const;  // e.g. "{0,3}"

    friend DigitSet operator&(DigitSet a, DigitSet b) { return from_mask(a.mask_ & b.mask_); }
    friend DigitSet operator|(DigitSet a, DigitSet b) { return from_mask(a.mask_ | b.mask_); }
    friend bool operator==(DigitSet, DigitSet) = default;

private:
    std::uint16_t mask_ = 0;
};

struct ButtonId {
    int index = 0;

    friend auto operator<=>(const ButtonId&, const ButtonId&) = default;
};

/// Yellow/Grey assignment of the ten digits for one round. Always holds
/// at least one digit of each color.
class Coloring {
public:
    explicit Coloring(const std::array<Color, kDigitCount>& colors);

    static Coloring from_yellow(DigitSet yellow);
    // Ten characters over {Y,G}, indexed by digit.
    static Coloring parse(std::string_view text);

    Color operator[](Digit d) const { return colors_[d.value()]; }
    Color at(int digit) const { return colors_.at(static_cast<std::size_t>(digit)); }
    DigitSet yellow() const;
    DigitSet grey() const { return DigitSet::from_mask(static_cast<std::uint16_t>(~yellow().mask() & 0x3FF)); }
    DigitSet with_color(Color c) const { return c == Color::Yellow ? yellow() : grey(); }
    std::string to_string() const;

    friend bool operator==(const Coloring&, const Coloring&) = default;

private:
    std::array<Color, kDigitCount> colors_;
};

struct ClickEvent {
    Coloring coloring;
    ButtonId button;

    friend bool operator==(const ClickEvent&, const ClickEvent&) = default;
};

/// Partial button -> color map. Total mappings used as a user's convention
/// must contain both colors; partial ones carry no such constraint.
class ButtonMapping {
public:
    explicit ButtonMapping(int n_buttons);

    // "Y", "G" or "?" per button.
    static ButtonMapping parse(std::string_view text);

    int n_buttons() const { return static_cast<int>(colors_.size()); }
    std::optional<Color> get(ButtonId b) const;
    void set(ButtonId b, Color c);
    void clear(ButtonId b);

    int assigned_count() const;
    bool is_total() const { return assigned_count() == n_buttons(); }
    bool is_valid_total() const;
    // True if some completion of this mapping uses both colors.
    bool extendable_to_valid_total() const;
    std::vector<ButtonId> buttons_with(Color c) const;

    bool is_restriction_of(const ButtonMapping& other) const;
    bool conflicts_with(const ButtonMapping& other) const;
    // Union of two non-conflicting mappings; throws InvalidArgument on conflict.
    ButtonMapping merged(const ButtonMapping& other) const;

    std::string to_string() const;

    friend bool operator==(const ButtonMapping&, const ButtonMapping&) = default;

private:
    void check(ButtonId b) const;

    std::vector<std::optional<Color>> colors_;
};

// Fixed two-button convention of the classic method: left Yellow, right Grey.
ButtonMapping classic_mapping();

}  // namespace iftt
