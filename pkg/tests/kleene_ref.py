"""Reference interpreter for the two-register machine of kleene.ct.

Written from the machine description, independently of the object-level
definitions: pairs are decoded in closed form rather than by enumeration.
"""

from __future__ import annotations

from math import isqrt


def pair(a: int, b: int) -> int:
    s = a + b
    return s * (s + 1) // 2 + b


def unpair(z: int) -> tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


def encode(prog: list[int]) -> int:
    e = 0
    for c in reversed(prog):
        e = pair(c, e) + 1
    return e


def decode(e: int) -> list[int]:
    out = []
    while e:
        h, e = unpair(e - 1)
        out.append(h)
    return out


def inc(reg: int, target: int) -> int:
    return 4 * target + 2 * reg


def jz(reg: int, target: int) -> int:
    return 4 * target + 2 * reg + 1


def run(prog: list[int], x: int, steps: int) -> tuple[int, list[int]]:
    pc, regs = 0, [x, 0]
    for _ in range(steps):
        if pc >= len(prog):
            break
        c = prog[pc]
        op, reg, target = c % 2, (c // 2) % 2, c // 4
        if op == 0:
            regs[reg] += 1
            pc = target
        elif regs[reg] == 0:
            pc = target
        else:
            regs[reg] -= 1
            pc += 1
    return pc, regs


def halting_time(prog: list[int], x: int, bound: int) -> int | None:
    for n in range(bound + 1):
        if run(prog, x, n)[0] >= len(prog):
            return n
    return None


def T(prog: list[int], x: int, z: int) -> bool:
    steps, out = unpair(z)
    pc, regs = run(prog, x, steps)
    return pc >= len(prog) and regs[0] == out
