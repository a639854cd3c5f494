"""Truncated enveloping algebras U(P) and their primitives.

U(P) is built from words in a basis of P, modulo the relations coming from the
bracket, and only up to a word length cap.  Products that would exceed the cap
are left undefined.  The coproduct makes generators primitive and the antipode
is computed degree by degree.

Run:  python demos/enveloping.py
"""
from pathlib import Path

from ydlie.dsl import parse_spec
from ydlie.hopf import TruncatedHopf, check_antipode, check_primitives_lie, enveloping_truncated, primitives

SPECS = Path(__file__).resolve().parent.parent / "specs"

# An odd line with zero bracket: x^2 is forced to vanish, so U(P) = k[x]/(x^2).
W = parse_spec((SPECS / "grassmann.yd").read_text()).build()
H = enveloping_truncated(W.lie("Z"), 4)
print("odd line:          dims by word length", H.dims())

# The two-dimensional nonabelian Lie algebra: dims follow PBW, 1, 2, 3, 4, ...
W = parse_spec((SPECS / "gl2.yd").read_text()).build()
H = enveloping_truncated(W.lie("Affine"), 3)
print("affine algebra:    dims by word length", H.dims())
print("  antipode identities hold:", check_antipode(H).ok)
P = primitives(H)
print(f"  primitives below the cap: dim {P.dim}")
print("  primitives closed under brackets:", check_primitives_lie(H, 2).ok)

# Full 2x2 matrices, cap 3.
H = enveloping_truncated(W.lie("L"), 3)
print("gl(2):             dims by word length", H.dims())

# Dumps are exact and reload without the defining ideal.
again = TruncatedHopf.load(H.dump())
print("dump round trip preserves the tables:", again.dump() == H.dump())
