"""The five-condition freeness criterion on two instances.

The shift example passes and its family is free.  The Fibonacci orbit has
a planted dependence; it fails the growth condition, and replaying the
induction shows exactly where the rank argument stops.

Run: python3 demos/general_criterion.py
"""

from shiftfree.genprop import (
    check_conditions,
    family_is_free,
    fibonacci_planted_instance,
    shift_example_instance,
    verify_induction_claim,
)

inst = shift_example_instance(4, 12)
rep = check_conditions(inst)
print("shift example")
for line in rep.lines():
    print("   ", line)
print("    family free:", family_is_free(inst))

planted, witness = fibonacci_planted_instance(8)
print("planted dependence", witness.to_literal())
for line in check_conditions(planted).lines():
    print("   ", line)
for line in verify_induction_claim(planted, witness).lines():
    print("   ", line)
