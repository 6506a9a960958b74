#include "xpl/sample_models.hpp"

namespace xpl {

Plts choice_loop_model(bool reactive) {
    Plts m;
    for (const char* s : {"s1", "s2", "s3", "s4", "s5", "s6"}) m.add_state(s);
    m.add_transition("s1", "a", 0, "s2", 1);
    if (reactive) {
        m.add_transition("s2", "b", 0, "s3", 1);
        m.add_transition("s2", "c", 0, "s4", 1);
    } else {
        for (const char* a : {"b", "c"}) {
            m.add_transition("s2", a, 0, "s3", 1);
            m.add_transition("s2", a, 1, "s4", 1);
        }
    }
    m.add_transition("s3", "a", 0, "s2", Rational(2, 3));
    m.add_transition("s3", "a", 0, "s5", Rational(1, 3));
    m.add_transition("s4", "a", 0, "s2", Rational(3, 4));
    m.add_transition("s4", "a", 0, "s6", Rational(1, 4));
    return m;
}

Formula choice_loop_formula() {
    return mu("X", conj({box("a", box("b", var("X"))), box("a", box("c", var("X")))}));
}

}  // namespace xpl
