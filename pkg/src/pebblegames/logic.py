"""First-order evaluation on ordered structures, with a sentence sampler.

Sentences are s-expressions over the signature E (edge), le (linear order),
eq (equality):

    sentence ::= (E v v) | (le v v) | (eq v v)
               | (not s) | (and s s ...) | (or s s ...)
               | (exists v s) | (forall v s)

Evaluation is bottom-up on boolean numpy arrays with one axis per variable
name; quantifiers reduce the variable's axis keeping dims, which gives the
standard shadowing semantics when a name is requantified."""

from __future__ import annotations

import random

import numpy as np

from .structures import OrderedStructure

ATOMS = ("E", "le", "eq")


def parse(text: str):
    """Parse an s-expression into nested tuples of strings."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def read():
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of input")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            items = []
            while True:
                if pos >= len(tokens):
                    raise ValueError("unbalanced '('")
                if tokens[pos] == ")":
                    break
                items.append(read())
            pos += 1
            return tuple(items)
        if tok == ")":
            raise ValueError("unbalanced ')'")
        return tok

    expr = read()
    if pos != len(tokens):
        raise ValueError("trailing input")
    _validate(expr)
    return expr


def _validate(expr):
    """Check operator names and arities of a parsed expression."""
    if isinstance(expr, str):
        raise ValueError(f"bare token {expr!r} is not a formula")
    if not expr:
        raise ValueError("empty form")
    op = expr[0]
    if op in ATOMS:
        if len(expr) != 3 or not all(_is_var(v) for v in expr[1:]):
            raise ValueError(f"{op} takes two variables")
    elif op in ("exists", "forall"):
        if len(expr) != 3 or not _is_var(expr[1]):
            raise ValueError(f"{op} takes a variable and a formula")
        _validate(expr[2])
    elif op == "not":
        if len(expr) != 2:
            raise ValueError("not takes one formula")
        _validate(expr[1])
    elif op in ("and", "or"):
        if len(expr) < 2:
            raise ValueError(f"{op} takes at least one formula")
        for sub in expr[1:]:
            _validate(sub)
    else:
        raise ValueError(f"unknown operator {op!r}")


def _is_var(v) -> bool:
    return isinstance(v, str) and v.isidentifier()


def unparse(expr) -> str:
    if isinstance(expr, str):
        return expr
    return "(" + " ".join(unparse(e) for e in expr) + ")"


def variables(expr) -> list[str]:
    """All variable names occurring in the sentence, sorted."""
    out = set()

    def walk(e):
        if isinstance(e, str):
            return
        if e[0] in ATOMS:
            out.update(e[1:])
        elif e[0] in ("exists", "forall"):
            out.add(e[1])
            walk(e[2])
        else:
            for sub in e[1:]:
                walk(sub)

    walk(expr)
    return sorted(out)


def quantifier_rank(expr) -> int:
    if isinstance(expr, str) or expr[0] in ATOMS:
        return 0
    if expr[0] in ("exists", "forall"):
        return 1 + quantifier_rank(expr[2])
    return max(quantifier_rank(e) for e in expr[1:])


def free_variables(expr, bound=frozenset()) -> set[str]:
    if isinstance(expr, str):
        return set()
    if expr[0] in ATOMS:
        return {v for v in expr[1:] if v not in bound}
    if expr[0] in ("exists", "forall"):
        return free_variables(expr[2], bound | {expr[1]})
    out = set()
    for sub in expr[1:]:
        out |= free_variables(sub, bound)
    return out


def evaluate(struct: OrderedStructure, sentence) -> bool:
    """Truth value of a closed sentence in the structure."""
    if isinstance(sentence, str):
        sentence = parse(sentence)
    if free_variables(sentence):
        raise ValueError(f"free variables: {sorted(free_variables(sentence))}")
    n = len(struct.vertices)
    names = variables(sentence)
    axis = {v: i for i, v in enumerate(names)}
    d = len(names)
    adj = np.zeros((n, n), dtype=bool)
    for e in struct.edges:
        u, v = tuple(e)
        i, j = struct.position[u], struct.position[v]
        adj[i, j] = adj[j, i] = True
    rank = np.arange(n)

    def along(v1, v2, table):
        # table indexed by (value of v1, value of v2), spread to full shape
        shape = [1] * d
        shape[axis[v1]] = n
        a = rank.reshape(shape)
        shape = [1] * d
        shape[axis[v2]] = n
        b = rank.reshape(shape)
        return table(a, b)

    def ev(e):
        op = e[0]
        if op == "E":
            return along(e[1], e[2], lambda a, b: adj[a, b])
        if op == "le":
            return along(e[1], e[2], np.less_equal)
        if op == "eq":
            return along(e[1], e[2], np.equal)
        if op == "not":
            return ~ev(e[1])
        if op == "and":
            out = ev(e[1])
            for sub in e[2:]:
                out = out & ev(sub)
            return out
        if op == "or":
            out = ev(e[1])
            for sub in e[2:]:
                out = out | ev(sub)
            return out
        if op in ("exists", "forall"):
            body = ev(e[2])
            if body.ndim == 0:
                return body
            red = np.any if op == "exists" else np.all
            return red(body, axis=axis[e[1]], keepdims=True)
        raise ValueError(f"unknown operator {op!r}")

    result = ev(sentence)
    return bool(result.flat[0])


def clique_sentence(k: int):
    """Existence of a k-clique, using k variables and quantifier rank k."""
    names = [f"x{i}" for i in range(k)]
    atoms = [("E", names[i], names[j])
             for i in range(k) for j in range(i + 1, k)]
    body = ("and",) + tuple(atoms)
    for v in reversed(names):
        body = ("exists", v, body)
    return body


def sample_sentence(rng: random.Random, vars=("u", "v"), max_qr: int = 3,
                    max_depth: int = 6):
    """One random closed sentence over the given variable names with
    quantifier rank at most max_qr."""

    def gen(depth, qr, free):
        choices = ["atom"] if free else []
        if qr > 0:
            choices += ["quant", "quant"]
        if depth > 0 and free:
            choices += ["not", "and", "or"]
        kind = rng.choice(choices or ["quant"])
        if kind == "atom":
            a = (rng.choice(ATOMS), rng.choice(free), rng.choice(free))
            return a
        if kind == "quant":
            v = rng.choice(vars)
            body = gen(depth - 1, qr - 1, tuple(set(free) | {v}))
            return (rng.choice(("exists", "forall")), v, body)
        if kind == "not":
            return ("not", gen(depth - 1, qr, free))
        n = rng.randint(2, 3)
        return (kind,) + tuple(gen(depth - 1, qr, free) for _ in range(n))

    return gen(max_depth, max_qr, ())


def sample_agreement(a: OrderedStructure, b: OrderedStructure, count: int,
                     seed: int = 0, vars=("u", "v"), max_qr: int = 3):
    """Evaluate `count` sampled sentences on both structures; raise
    AssertionError with the offending sentence on any disagreement.
    Returns the number of sentences that were true on both."""
    rng = random.Random(seed)
    true_both = 0
    for _ in range(count):
        s = sample_sentence(rng, vars=vars, max_qr=max_qr)
        ra, rb = evaluate(a, s), evaluate(b, s)
        if ra != rb:
            raise AssertionError(f"structures disagree on {unparse(s)}: "
                                 f"a={ra} b={rb}")
        true_both += ra
    return true_both
