#ifndef SWIRL_PORTER_HPP
#define SWIRL_PORTER_HPP

#include <string>
#include <string_view>

namespace swirl {

namespace detail {

// Porter suffix-stripping algorithm, following Martin Porter's reference
// implementation (including its documented departures from the 1980 paper:
// step 2 uses bli->ble and adds logi->log, and words of length 1 or 2 are
// left unchanged). Conformance is pinned by the published test vocabulary
// in tests/fixtures/porter/.
class porter_algorithm {
public:
    // stems buf[0..len) in place, returns the new length
    static std::size_t run(char* buf, std::size_t len) {
        if (len <= 2) return len;
        porter_algorithm p(buf, static_cast<int>(len) - 1);
        p.step1ab();
        p.step1c();
        p.step2();
        p.step3();
        p.step4();
        p.step5();
        return static_cast<std::size_t>(p.k_) + 1;
    }

private:
    porter_algorithm(char* b, int k) : b_(b), k_(k) {}

    char* b_;
    int k_; // index of last letter
    int j_; // index of last letter of the stem under test

    bool cons(int i) const {
        switch (b_[i]) {
            case 'a': case 'e': case 'i': case 'o': case 'u':
                return false;
            case 'y':
                return i == 0 ? true : !cons(i - 1);
            default:
                return true;
        }
    }

    // number of consonant-vowel sequences in b[0..j]
    int measure() const {
        int n = 0;
        int i = 0;
        while (true) {
            if (i > j_) return n;
            if (!cons(i)) break;
            ++i;
        }
        ++i;
        while (true) {
            while (true) {
                if (i > j_) return n;
                if (cons(i)) break;
                ++i;
            }
            ++i;
            ++n;
            while (true) {
                if (i > j_) return n;
                if (!cons(i)) break;
                ++i;
            }
            ++i;
        }
    }

    bool vowel_in_stem() const {
        for (int i = 0; i <= j_; ++i)
            if (!cons(i)) return true;
        return false;
    }

    bool double_cons(int j) const {
        if (j < 1) return false;
        if (b_[j] != b_[j - 1]) return false;
        return cons(j);
    }

    // consonant-vowel-consonant ending at i, last consonant not w, x or y
    bool cvc(int i) const {
        if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
        const char ch = b_[i];
        return ch != 'w' && ch != 'x' && ch != 'y';
    }

    bool ends(std::string_view s) {
        const int length = static_cast<int>(s.size());
        if (length > k_ + 1) return false;
        for (int i = 0; i < length; ++i)
            if (b_[k_ - length + 1 + i] != s[i]) return false;
        j_ = k_ - length;
        return true;
    }

    void set_to(std::string_view s) {
        for (std::size_t i = 0; i < s.size(); ++i) b_[j_ + 1 + static_cast<int>(i)] = s[i];
        k_ = j_ + static_cast<int>(s.size());
    }

    void replace_if_m(std::string_view s) {
        if (measure() > 0) set_to(s);
    }

    void step1ab() {
        if (b_[k_] == 's') {
            if (ends("sses"))
                k_ -= 2;
            else if (ends("ies"))
                set_to("i");
            else if (b_[k_ - 1] != 's')
                --k_;
        }
        if (ends("eed")) {
            if (measure() > 0) --k_;
        } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
            k_ = j_;
            if (ends("at"))
                set_to("ate");
            else if (ends("bl"))
                set_to("ble");
            else if (ends("iz"))
                set_to("ize");
            else if (double_cons(k_)) {
                --k_;
                const char ch = b_[k_];
                if (ch == 'l' || ch == 's' || ch == 'z') ++k_;
            } else if (measure() == 1 && cvc(k_)) {
                set_to("e");
            }
        }
    }

    void step1c() {
        if (ends("y") && vowel_in_stem()) b_[k_] = 'i';
    }

    void step2() {
        switch (b_[k_ - 1]) {
            case 'a':
                if (ends("ational")) { replace_if_m("ate"); break; }
                if (ends("tional")) { replace_if_m("tion"); break; }
                break;
            case 'c':
                if (ends("enci")) { replace_if_m("ence"); break; }
                if (ends("anci")) { replace_if_m("ance"); break; }
                break;
            case 'e':
                if (ends("izer")) { replace_if_m("ize"); break; }
                break;
            case 'l':
                if (ends("bli")) { replace_if_m("ble"); break; }
                if (ends("alli")) { replace_if_m("al"); break; }
                if (ends("entli")) { replace_if_m("ent"); break; }
                if (ends("eli")) { replace_if_m("e"); break; }
                if (ends("ousli")) { replace_if_m("ous"); break; }
                break;
            case 'o':
                if (ends("ization")) { replace_if_m("ize"); break; }
                if (ends("ation")) { replace_if_m("ate"); break; }
                if (ends("ator")) { replace_if_m("ate"); break; }
                break;
            case 's':
                if (ends("alism")) { replace_if_m("al"); break; }
                if (ends("iveness")) { replace_if_m("ive"); break; }
                if (ends("fulness")) { replace_if_m("ful"); break; }
                if (ends("ousness")) { replace_if_m("ous"); break; }
                break;
            case 't':
                if (ends("aliti")) { replace_if_m("al"); break; }
                if (ends("iviti")) { replace_if_m("ive"); break; }
                if (ends("biliti")) { replace_if_m("ble"); break; }
                break;
            case 'g':
                if (ends("logi")) { replace_if_m("log"); break; }
                break;
            default:
                break;
        }
    }

    void step3() {
        switch (b_[k_]) {
            case 'e':
                if (ends("icate")) { replace_if_m("ic"); break; }
                if (ends("ative")) { replace_if_m(""); break; }
                if (ends("alize")) { replace_if_m("al"); break; }
                break;
            case 'i':
                if (ends("iciti")) { replace_if_m("ic"); break; }
                break;
            case 'l':
                if (ends("ical")) { replace_if_m("ic"); break; }
                if (ends("ful")) { replace_if_m(""); break; }
                break;
            case 's':
                if (ends("ness")) { replace_if_m(""); break; }
                break;
            default:
                break;
        }
    }

    void step4() {
        switch (b_[k_ - 1]) {
            case 'a':
                if (ends("al")) break;
                return;
            case 'c':
                if (ends("ance")) break;
                if (ends("ence")) break;
                return;
            case 'e':
                if (ends("er")) break;
                return;
            case 'i':
                if (ends("ic")) break;
                return;
            case 'l':
                if (ends("able")) break;
                if (ends("ible")) break;
                return;
            case 'n':
                if (ends("ant")) break;
                if (ends("ement")) break;
                if (ends("ment")) break;
                if (ends("ent")) break;
                return;
            case 'o':
                if (ends("ion") && j_ >= 0 && (b_[j_] == 's' || b_[j_] == 't')) break;
                if (ends("ou")) break;
                return;
            case 's':
                if (ends("ism")) break;
                return;
            case 't':
                if (ends("ate")) break;
                if (ends("iti")) break;
                return;
            case 'u':
                if (ends("ous")) break;
                return;
            case 'v':
                if (ends("ive")) break;
                return;
            case 'z':
                if (ends("ize")) break;
                return;
            default:
                return;
        }
        if (measure() > 1) k_ = j_;
    }

    void step5() {
        j_ = k_;
        if (b_[k_] == 'e') {
            const int a = measure();
            if (a > 1 || (a == 1 && !cvc(k_ - 1))) --k_;
        }
        if (b_[k_] == 'l' && double_cons(k_) && measure() > 1) --k_;
    }
};

} // namespace detail

/// Stems a lowercase word with one pass of the Porter algorithm. Tokens
/// containing anything outside a-z are returned unchanged.
inline std::string porter_stem(std::string word) {
    for (const char c : word)
        if (c < 'a' || c > 'z') return word;
    const std::size_t n = detail::porter_algorithm::run(word.data(), word.size());
    word.resize(n);
    return word;
}

/// Index-term stemmer: porter_stem iterated to a fixed point, so that
/// stem(stem(w)) == stem(w) and re-indexing already-stemmed text is stable.
/// A single Porter pass lacks that guarantee (accidental -> accident, but
/// accident -> accid). Passes cannot cycle: a pass either shortens the word
/// or rewrites an -i/-y ending into an -e form no rule reintroduces.
inline std::string stem(std::string word) {
    while (true) {
        std::string next = porter_stem(word);
        if (next == word) return next;
        word = std::move(next);
    }
}

} // namespace swirl

#endif // SWIRL_PORTER_HPP
