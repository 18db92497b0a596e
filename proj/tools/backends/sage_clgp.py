#!/usr/bin/env sage -python
"""Class-group backend for cmt speaking the line protocol on stdin/stdout.

Request:  CLGP <p> <d> <c0> ... <cd>   (ascending coefficients of an irreducible polynomial)
Reply:    OK <rank> <grh>              (p-rank of Cl(Q[x]/f); grh = 1 when the bound was not proven)
          ERR <message>
QUIT ends the session.

Usage: cmt rank --family quartic --D 17 --backend "sage -python tools/backends/sage_clgp.py"
Set CMT_CLGP_PROOF=1 to certify class groups unconditionally (slow beyond degree 12).
"""
import os
import sys

from sage.all import QQ, NumberField, PolynomialRing

PROOF = os.environ.get("CMT_CLGP_PROOF") == "1"
R = PolynomialRing(QQ, "x")


def p_rank(p, coeffs):
    f = R(coeffs)
    if f.degree() == 1:
        return 0
    K = NumberField(f, "a")
    return sum(1 for n in K.class_group(proof=PROOF).invariants() if n % p == 0)


def main():
    for line in sys.stdin:
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "QUIT":
            break
        if parts[0] != "CLGP" or len(parts) < 4:
            print("ERR malformed request", flush=True)
            continue
        try:
            p, d = int(parts[1]), int(parts[2])
            coeffs = [int(c) for c in parts[3:]]
            if len(coeffs) != d + 1:
                raise ValueError("coefficient count")
            print("OK %d %d" % (p_rank(p, coeffs), 0 if PROOF else 1), flush=True)
        except Exception as e:
            print("ERR %s" % str(e).replace("\n", " "), flush=True)


if __name__ == "__main__":
    main()
