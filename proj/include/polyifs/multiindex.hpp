#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polyifs/geometry.hpp"

namespace polyifs {

// Finite word over {0..m-1} (displayed 1-based).
struct MultiIndex {
    std::vector<int> word;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> w) : word(std::move(w)) {}

    int length() const { return static_cast<int>(word.size()); }
    bool empty() const { return word.empty(); }

    MultiIndex concat(const MultiIndex& other) const {
        MultiIndex r = *this;
        r.word.insert(r.word.end(), other.word.begin(), other.word.end());
        return r;
    }
    MultiIndex concat(int symbol) const {
        MultiIndex r = *this;
        r.word.push_back(symbol);
        return r;
    }

    // true if *this is a prefix of other (i ⊏ j, including equality)
    bool is_prefix_of(const MultiIndex& other) const {
        if (word.size() > other.word.size()) return false;
        for (size_t i = 0; i < word.size(); ++i)
            if (word[i] != other.word[i]) return false;
        return true;
    }
    bool incomparable_with(const MultiIndex& other) const {
        return !is_prefix_of(other) && !other.is_prefix_of(*this);
    }

    bool operator==(const MultiIndex& o) const { return word == o.word; }
    bool operator<(const MultiIndex& o) const { return word < o.word; }

    std::string str() const {
        std::string s;
        for (size_t i = 0; i < word.size(); ++i) {
            if (i) s += '.';
            s += std::to_string(word[i] + 1);
        }
        return s;
    }
};

// Eventually periodic infinite word: preperiod followed by period repeated.
// Empty period means truncation-only evaluation of the finite preperiod.
struct Address {
    MultiIndex preperiod;
    MultiIndex period;

    bool purely_periodic() const { return preperiod.empty() && !period.empty(); }

    // symbol at position k (0-based); requires nonempty period when k reaches it
    int symbol(int k) const {
        if (k < preperiod.length()) return preperiod.word[static_cast<size_t>(k)];
        int p = period.length();
        if (p == 0) throw Error("TruncatedAddress", "no symbol beyond the preperiod");
        return period.word[static_cast<size_t>((k - preperiod.length()) % p)];
    }

    // first n symbols as a finite word
    MultiIndex prefix(int n) const {
        MultiIndex r;
        r.word.reserve(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k) r.word.push_back(symbol(k));
        return r;
    }

    // shift sigma: drop the first symbol
    Address shifted() const {
        Address a = *this;
        if (!a.preperiod.empty()) {
            a.preperiod.word.erase(a.preperiod.word.begin());
        } else if (!a.period.empty()) {
            // rotate the period
            int first = a.period.word.front();
            a.period.word.erase(a.period.word.begin());
            a.period.word.push_back(first);
        } else {
            throw Error("TruncatedAddress", "cannot shift an empty address");
        }
        return a;
    }

    // Canonical form: minimal period (no repeated sub-period), preperiod with
    // its periodic tail absorbed.  Enables set-based closure computations.
    Address canonical() const;

    bool operator==(const Address& o) const {
        return preperiod == o.preperiod && period == o.period;
    }
    bool operator<(const Address& o) const {
        if (preperiod.word != o.preperiod.word) return preperiod.word < o.preperiod.word;
        return period.word < o.period.word;
    }

    std::string str() const {
        std::string s = preperiod.str();
        if (!period.empty()) {
            if (!s.empty()) s += "|";
            s += "(" + period.str() + ")*";
        }
        return s;
    }
};

inline Address Address::canonical() const {
    Address a = *this;
    if (a.period.empty()) return a;
    // minimal period
    int p = a.period.length();
    for (int d = 1; d < p; ++d) {
        if (p % d != 0) continue;
        bool ok = true;
        for (int k = d; k < p && ok; ++k)
            if (a.period.word[static_cast<size_t>(k)] !=
                a.period.word[static_cast<size_t>(k - d)])
                ok = false;
        if (ok) {
            a.period.word.resize(static_cast<size_t>(d));
            break;
        }
    }
    // absorb preperiod tail matching the (rotated) period
    while (!a.preperiod.empty() && a.preperiod.word.back() == a.period.word.back()) {
        a.preperiod.word.pop_back();
        int last = a.period.word.back();
        a.period.word.pop_back();
        a.period.word.insert(a.period.word.begin(), last);
    }
    return a;
}

}  // namespace polyifs
