"""
Sign programs and their substitutions
=====================================

A periodic sign program s_0 ... s_(p-1) gives a recurrence whose coefficients
are the image under phi of a fixed point of S_{s0} o ... o S_{s(p-1)}.
"""

import numpy as np

from aperiodic import Letter, factor_map, fixed_point_prefix, rule_from_signs
from aperiodic import Binary, ConstructionSpec, SignProgram, coefficients

for word in ["+", "-", "-+", "+-", "++-"]:
    rule = rule_from_signs(word)
    print(f"{rule.name}: length {rule.length}")
    for line in rule.describe():
        print("   ", line)

    p = len(word)
    level = p * (12 // p)
    eps = coefficients(ConstructionSpec(Binary(SignProgram.parse(word)), level))
    fixed = fixed_point_prefix(rule, Letter(0, 0, 2), 2 ** level)
    same = np.array_equal(eps.exponents, factor_map(fixed).exponents)
    print(f"    fixed point: {' '.join(str(x) for x in fixed[:12])} ...")
    print(f"    recurrence == phi(fixed point) over {len(eps)} terms: {same}")
    print()

# letters can also be read off the base-L digits of the position, without
# building the prefix
from aperiodic.substitution import letter_at

rule = rule_from_signs("-+")
print("S-+ fixed point at 10**k:", [str(letter_at(rule, Letter(0, 0, 2), 10 ** k)) for k in range(10)])
