"""Parsing scalar fields phi(u, v) from text."""

from trapgauss.errors import ExpressionSyntaxError, UnknownIdentifier
from trapgauss.expr import eval_jet, eval_real, parse, to_text

tree = parse("-u^2^3 + sin(pi*v)/2")
print("fully parenthesized:", to_text(tree))
print("value at (1, 0.5):", eval_real(tree, 1.0, 0.5))

j = eval_jet(parse("sin(pi*u)*sin(pi*v)"), 0.5, 0.5)
print("phi_uu at the centre of the square:", j.deriv(2, 0))

for bad in ("u +", "u * tan(v)"):
    try:
        parse(bad)
    except (ExpressionSyntaxError, UnknownIdentifier) as exc:
        print(f"{bad!r}: {exc} (exit code {exc.exit_code})")
        print("  " + bad)
        print("  " + " " * exc.offset + "^")
