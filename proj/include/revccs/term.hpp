#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace revccs {

// Structured value used for event names, identifiers and structure labels.
class Term {
public:
    enum class Kind : std::uint8_t { Atom, Star, Pair, Tagged, Bottom, Text };

    Term();
    static Term atom(std::uint64_t n);
    static Term star();
    static Term pair(const Term &left, const Term &right);
    static Term tagged(int branch, const Term &inner);
    static Term bottom(const Term &inner);
    static Term text(const std::string &s);

    Kind kind() const { return kind_; }
    std::uint64_t number() const { return number_; }
    const std::string &text_value() const { return text_; }
    const Term &left() const { return (*args_)[0]; }
    const Term &right() const { return (*args_)[1]; }
    const Term &inner() const { return (*args_)[0]; }
    bool is_star() const { return kind_ == Kind::Star; }

    std::string str() const;
    std::size_t hash() const { return hash_; }

    friend int compare(const Term &a, const Term &b);
    friend bool operator==(const Term &a, const Term &b) {
        return a.hash_ == b.hash_ && compare(a, b) == 0;
    }
    friend std::strong_ordering operator<=>(const Term &a, const Term &b) {
        int c = compare(a, b);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    void rehash();

    Kind kind_ = Kind::Atom;
    std::uint64_t number_ = 0;
    std::string text_;
    std::shared_ptr<const std::vector<Term>> args_;
    std::size_t hash_ = 0;
};

struct EventId {
    Term value;
    auto operator<=>(const EventId &) const = default;
    bool operator==(const EventId &) const = default;
    std::string str() const { return value.str(); }
};

struct Identifier {
    Term value;
    auto operator<=>(const Identifier &) const = default;
    bool operator==(const Identifier &) const = default;
    std::string str() const { return value.str(); }
    static Identifier base(std::uint64_t n) { return {Term::atom(n)}; }
};

struct Label {
    Term value;
    auto operator<=>(const Label &) const = default;
    bool operator==(const Label &) const = default;
    std::string str() const { return value.str(); }
    static Label action(const std::string &s) { return {Term::text(s)}; }
};

}  // namespace revccs

template <>
struct std::hash<revccs::Term> {
    std::size_t operator()(const revccs::Term &t) const noexcept { return t.hash(); }
};
template <>
struct std::hash<revccs::EventId> {
    std::size_t operator()(const revccs::EventId &t) const noexcept { return t.value.hash(); }
};
template <>
struct std::hash<revccs::Identifier> {
    std::size_t operator()(const revccs::Identifier &t) const noexcept { return t.value.hash(); }
};
template <>
struct std::hash<revccs::Label> {
    std::size_t operator()(const revccs::Label &t) const noexcept { return t.value.hash(); }
};
