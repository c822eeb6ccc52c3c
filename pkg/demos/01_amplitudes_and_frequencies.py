"""
Amplitudes, involutions and relative frequencies
================================================

A representation is an ordered list of outcome labels with complex
coefficients.  The squared-modulus rule turns it into relative frequencies.
"""

from statlength import Representation, born_frequencies, star, tilde, to_polar

# The two involutions: conjugation, and the swap of real and imaginary parts.
a = 3 + 4j
print("a        =", a)
print("star(a)  =", complex(star(a)))
print("tilde(a) =", complex(tilde(a)), "  i*star(a) =", 1j * complex(star(a)))
print("polar    =", to_polar(a))

# A two-outcome representation and its frequencies.
rep = Representation.from_amplitudes([1, 2j], labels=["up", "down"])
print(rep.to_json())
print("frequencies:", born_frequencies(rep))

# A global complex factor cancels in the ratio.
print("after scaling by 3+4i:", born_frequencies(rep.scaled(3 + 4j)))
