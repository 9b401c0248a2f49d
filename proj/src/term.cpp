#include "revccs/term.hpp"

using namespace std;

namespace revccs {

Term::Term() {
    rehash();
}

Term Term::atom(uint64_t n) {
    Term t;
    t.kind_ = Kind::Atom;
    t.number_ = n;
    t.rehash();
    return t;
}

Term Term::star() {
    Term t;
    t.kind_ = Kind::Star;
    t.rehash();
    return t;
}

Term Term::pair(const Term &left, const Term &right) {
    Term t;
    t.kind_ = Kind::Pair;
    t.args_ = make_shared<const vector<Term>>(vector<Term>{left, right});
    t.rehash();
    return t;
}

Term Term::tagged(int branch, const Term &inner) {
    Term t;
    t.kind_ = Kind::Tagged;
    t.number_ = static_cast<uint64_t>(branch);
    t.args_ = make_shared<const vector<Term>>(vector<Term>{inner});
    t.rehash();
    return t;
}

Term Term::bottom(const Term &inner) {
    Term t;
    t.kind_ = Kind::Bottom;
    t.args_ = make_shared<const vector<Term>>(vector<Term>{inner});
    t.rehash();
    return t;
}

Term Term::text(const string &s) {
    Term t;
    t.kind_ = Kind::Text;
    t.text_ = s;
    t.rehash();
    return t;
}

void Term::rehash() {
    size_t h = static_cast<size_t>(kind_) * 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    mix(std::hash<uint64_t>{}(number_));
    if (!text_.empty())
        mix(std::hash<string>{}(text_));
    if (args_)
        for (const auto &a : *args_)
            mix(a.hash_);
    hash_ = h;
}

string Term::str() const {
    switch (kind_) {
    case Kind::Atom:
        return to_string(number_);
    case Kind::Star:
        return "*";
    case Kind::Pair:
        return "(" + left().str() + "," + right().str() + ")";
    case Kind::Tagged:
        return to_string(number_) + ":" + inner().str();
    case Kind::Bottom:
        return "bot" + (inner().kind() == Kind::Pair ? inner().str() : "(" + inner().str() + ")");
    case Kind::Text:
        return text_;
    }
    return "";
}

int compare(const Term &a, const Term &b) {
    if (a.kind_ != b.kind_)
        return a.kind_ < b.kind_ ? -1 : 1;
    if (a.number_ != b.number_)
        return a.number_ < b.number_ ? -1 : 1;
    if (a.text_ != b.text_)
        return a.text_ < b.text_ ? -1 : 1;
    size_t na = a.args_ ? a.args_->size() : 0;
    size_t nb = b.args_ ? b.args_->size() : 0;
    if (na != nb)
        return na < nb ? -1 : 1;
    for (size_t k = 0; k < na; ++k) {
        int c = compare((*a.args_)[k], (*b.args_)[k]);
        if (c)
            return c;
    }
    return 0;
}

}  // namespace revccs
