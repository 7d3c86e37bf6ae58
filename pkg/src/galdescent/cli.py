"""Command-line front end: builds library objects from a parsed document,
dispatches the command, and renders a deterministic report.

Exit codes: 0 success, 1 validation failure, 2 parse/resolution error,
3 budget exceeded.
"""

import argparse
import sys
from fractions import Fraction

from .affine import (
    AffineAlgebra,
    AffineDescentDatum,
    SemilinearAlgebraMap,
    derive_point_action,
    descend_algebra,
    splits,
    validate_datum,
)
from .enumeration import count_affine_points
from .errors import BudgetExceeded, GaldescentError
from .extension import ExtensionField, finite_field, make_extension
from .fields import GF, QQ, PrimeField, RationalField
from .flat import AlgebraMap, FiniteAlgebra, amitsur_complex, check_exactness, check_faithfully_flat
from .galois import (
    GaloisGroup,
    cyclotomic_group,
    frobenius_group,
    verify_automorphism,
)
from .groebner import Ideal
from .linalg import Matrix
from .multipoly import MultiPolynomial
from .parser import Diagnostic, ParseError, parse
from .semilinear import SemilinearModule, counit_check, fixed_subspace, validate_action
from .unipoly import UniPoly
from .weil import (
    SeparableExtensionData,
    conjugate_product_check,
    etale_splitting,
    weil_restrict,
)


class CommandFailure(Exception):
    def __init__(self, diagnostic, exit_code):
        super().__init__(diagnostic.render())
        self.diagnostic = diagnostic
        self.exit_code = exit_code


def _code_for(error):
    name = type(error).__name__
    out = []
    for i, ch in enumerate(name):
        if ch.isupper() and i > 0:
            out.append("-")
        out.append(ch.lower())
    return "".join(out)


def _fail_validation(statement, error):
    exit_code = 3 if isinstance(error, BudgetExceeded) else 1
    raise CommandFailure(
        Diagnostic("error", statement.line, statement.col, str(error),
                   _code_for(error)),
        exit_code)


def _fail_resolution(line, col, message):
    raise CommandFailure(Diagnostic("error", line, col, message, "unresolved"), 2)


# -- expression materialization -------------------------------------------------

def eval_poly(ast, field, variables, statement):
    kind = ast[0]
    if kind == "int":
        return MultiPolynomial.constant(field, variables, ast[1])
    if kind == "frac":
        return MultiPolynomial.constant(
            field, variables, field.from_int(Fraction(ast[1], ast[2])))
    if kind == "sym":
        name = ast[1]
        if name in variables:
            return MultiPolynomial.variable(field, variables, name)
        if name == "t" and isinstance(field, ExtensionField):
            return MultiPolynomial.constant(field, variables, field.generator)
        _fail_resolution(ast[2], ast[3], f"unknown symbol {name!r} in polynomial")
    if kind == "add":
        return (eval_poly(ast[1], field, variables, statement)
                + eval_poly(ast[2], field, variables, statement))
    if kind == "sub":
        return (eval_poly(ast[1], field, variables, statement)
                - eval_poly(ast[2], field, variables, statement))
    if kind == "mul":
        return (eval_poly(ast[1], field, variables, statement)
                * eval_poly(ast[2], field, variables, statement))
    if kind == "neg":
        return -eval_poly(ast[1], field, variables, statement)
    if kind == "pow":
        return eval_poly(ast[1], field, variables, statement) ** ast[2]
    raise AssertionError(f"unhandled expression node {kind}")


def eval_unipoly(ast, base, statement):
    poly = eval_poly(ast, base, ("t",), statement)
    degree = poly.total_degree()
    coeffs = [base.zero] * (degree + 1)
    for exps, coeff in poly.terms.items():
        coeffs[exps[0]] = coeff
    return UniPoly(base, coeffs)


def eval_element(ast, field, statement):
    poly = eval_poly(ast, field, (), statement)
    return poly.coefficient_of(())


# -- workspace -------------------------------------------------------------------

class Workspace:
    def __init__(self, budget):
        self.budget = budget
        self.fields = {}        # name -> field object
        self.field_groups = {}  # name -> GaloisGroup or None
        self.groups = {}
        self.algebras = {}
        self.data = {}
        self.modules = {}
        self.maps = {}
        self.field_names = {}   # id(field) -> declared name

    def build(self, statement):
        try:
            getattr(self, f"_build_{statement.kind}")(statement)
        except CommandFailure:
            raise
        except GaldescentError as error:
            _fail_validation(statement, error)

    def _register_field(self, name, field, group):
        self.fields[name] = field
        self.field_groups[name] = group
        self.field_names.setdefault(id(field), name)

    def _build_field(self, statement):
        payload = statement.payload
        ctor = payload["ctor"]
        if ctor == "QQ":
            self._register_field(statement.name, QQ, None)
            return
        if ctor == "GF":
            p, n = payload["p"], payload["n"]
            if n == 1:
                self._register_field(statement.name, GF(p), None)
                return
            if payload["modulus"] is not None:
                modulus = eval_unipoly(payload["modulus"], GF(p), statement)
                field = finite_field(p, n, modulus)
            else:
                field = finite_field(p, n)
            group = frobenius_group(field)
            self._register_field(statement.name, field, group)
            return
        if ctor == "Cyclo":
            field, group = cyclotomic_group(payload["m"])
            self._register_field(statement.name, field, group)
            return
        modulus = eval_unipoly(payload["modulus"], QQ, statement)
        field = make_extension(QQ, modulus, irreducible=payload["irreducible"])
        self._register_field(statement.name, field, None)

    def _build_group(self, statement):
        payload = statement.payload
        if payload["ctor"] == "Aut":
            ext = self.fields[payload["ext"]]
            base = self.fields[payload["base"]]
            if not isinstance(ext, ExtensionField) or ext.base != base:
                _fail_resolution(statement.line, statement.col,
                                 f"{payload['ext']} is not an extension of {payload['base']}")
            group = self.field_groups.get(payload["ext"])
            if group is None:
                _fail_resolution(
                    statement.line, statement.col,
                    "no built-in automorphism family for this field; declare "
                    "an explicit automorphism list")
            self.groups[statement.name] = group
            return
        ext = self.fields[payload["ext"]]
        if not isinstance(ext, ExtensionField):
            _fail_resolution(statement.line, statement.col,
                             "explicit groups need an extension field")
        autos = []
        for i, ast in enumerate(payload["images"]):
            image = eval_element(ast, ext, statement)
            name = "id" if image == ext.generator else f"a{i}"
            autos.append(verify_automorphism(ext, image, name))
        group = GaloisGroup.close_and_verify(ext, autos, require_full=False)
        self.groups[statement.name] = group
        if group.is_full and self.field_groups.get(payload["ext"]) is None:
            self.field_groups[payload["ext"]] = group

    def _build_algebra(self, statement):
        payload = statement.payload
        field = self.fields[payload["field"]]
        variables = payload["variables"]
        gens = [eval_poly(ast, field, variables, statement)
                for ast in payload["relations"]]
        self.algebras[statement.name] = AffineAlgebra(
            field, variables, Ideal(field, variables, gens))

    def _group_for_field(self, field, statement):
        for name in reversed(list(self.groups)):
            group = self.groups[name]
            if group.ext == field and group.is_full:
                return group
        field_name = self.field_names.get(id(field))
        group = self.field_groups.get(field_name)
        if group is None:
            _fail_resolution(statement.line, statement.col,
                             "no full automorphism group known for the "
                             "algebra's field; declare one")
        return group

    def _build_datum(self, statement):
        payload = statement.payload
        algebra = self.algebras[payload["algebra"]]
        if not isinstance(algebra.field, ExtensionField):
            _fail_resolution(statement.line, statement.col,
                             "descent data need an algebra over an extension field")
        group = self._group_for_field(algebra.field, statement)
        by_label = {}
        for block in payload["blocks"]:
            images = {}
            for var, line, col, ast in block["images"]:
                if var not in algebra.variables:
                    _fail_resolution(line, col,
                                     f"{var!r} is not a variable of the algebra")
                images[var] = eval_poly(ast, algebra.field, algebra.variables,
                                        statement)
            missing = [v for v in algebra.variables if v not in images]
            if missing:
                _fail_resolution(block["line"], block["col"],
                                 f"block {block['label']!r} misses images for "
                                 f"{', '.join(missing)}")
            by_label[block["label"]] = (block, images)
        maps = []
        ring_vars = dict(zip(algebra.variables, algebra.vars()))
        for idx, sigma in enumerate(group.elements):
            if sigma.name in by_label:
                maps.append(SemilinearAlgebraMap(sigma, by_label.pop(sigma.name)[1]))
            elif idx == group.identity_index:
                maps.append(SemilinearAlgebraMap(sigma, dict(ring_vars)))
            else:
                _fail_resolution(statement.line, statement.col,
                                 f"datum misses a block for group element "
                                 f"{sigma.name!r}")
        if by_label:
            label, (block, _) = next(iter(by_label.items()))
            _fail_resolution(block["line"], block["col"],
                             f"{label!r} is not a group element "
                             f"(elements: {', '.join(s.name for s in group.elements)})")
        self.data[statement.name] = AffineDescentDatum(algebra, group, maps)

    def _build_module(self, statement):
        payload = statement.payload
        group = self.groups[payload["group"]]
        dim = payload["dim"]
        ext = group.ext
        by_label = {}
        for block in payload["blocks"]:
            rows = block["matrix"]
            if len(rows) != dim or any(len(r) != dim for r in rows):
                _fail_resolution(block["line"], block["col"],
                                 f"matrix for {block['label']!r} is not {dim}x{dim}")
            matrix = Matrix(ext, [[eval_element(ast, ext, statement) for ast in row]
                                  for row in rows])
            by_label[block["label"]] = (block, matrix)
        cocycle = []
        for idx, sigma in enumerate(group.elements):
            if sigma.name in by_label:
                cocycle.append(by_label.pop(sigma.name)[1])
            elif idx == group.identity_index:
                cocycle.append(Matrix.identity(ext, dim))
            else:
                _fail_resolution(statement.line, statement.col,
                                 f"module misses a matrix for group element "
                                 f"{sigma.name!r}")
        if by_label:
            label, (block, _) = next(iter(by_label.items()))
            _fail_resolution(block["line"], block["col"],
                             f"{label!r} is not a group element")
        self.modules[statement.name] = SemilinearModule(group, dim, cocycle)

    def _build_map(self, statement):
        payload = statement.payload
        source = self.fields[payload["source"]]
        factors = [self.fields[name] for name in payload["factors"]]
        algebras = []
        for name, field in zip(payload["factors"], factors):
            if isinstance(field, ExtensionField):
                algebras.append(FiniteAlgebra.from_extension(field))
            else:
                algebras.append(FiniteAlgebra.base(field))
        target = algebras[0] if len(algebras) == 1 else FiniteAlgebra.product(algebras)
        if target.field != source:
            _fail_resolution(statement.line, statement.col,
                             "map source must be the common base field of the target")
        self.maps[statement.name] = AlgebraMap.base_inclusion(target)


# -- rendering helpers ------------------------------------------------------------

def field_decl_text(field):
    if isinstance(field, RationalField):
        return "QQ"
    if isinstance(field, PrimeField):
        return f"GF({field.p}^1)"
    if isinstance(field, ExtensionField):
        if field.base.is_finite:
            return (f"GF({field.base.p}^{field.degree}, "
                    f"modulus={field.modulus.format()})")
        flag = ", irreducible=assert" if field.irreducibility == "asserted" else ""
        return f"Ext(QQ, modulus={field.modulus.format()}{flag})"
    raise AssertionError("unknown field kind")


def sorted_generators(ideal):
    return sorted(ideal.generators,
                  key=lambda g: (g.total_degree(), g.format()))


def algebra_decl_text(name, field_name, algebra):
    gens = sorted_generators(algebra.relations)
    body = f"{field_name}[{', '.join(algebra.variables)}]"
    if gens:
        body += "/(" + ", ".join(g.format() for g in gens) + ")"
    return f"algebra {name} = {body}"


def format_vector(vec, field):
    return "[" + ", ".join(field.format_element(a) for a in vec) + "]"


# -- command handlers --------------------------------------------------------------

def run_descend(workspace, command, oracle):
    datum = workspace.data[command.name]
    lines = [f"== descend {command.name}"]
    validate_datum(datum, workspace.budget)
    model = descend_algebra(datum, workspace.budget, validate=False)
    base = model.algebra0.field
    k_name = f"k_{command.name}"
    lines.append(f"decl: field {k_name} = {field_decl_text(base)}")
    lines.append("decl: " + algebra_decl_text(
        f"model_{command.name}", k_name, model.algebra0))
    for name in model.algebra0.variables:
        lines.append(f"splitting: {name} -> {model.splitting[name].format()}")
    lines.append("splits check: pass")
    if oracle:
        ok = splits(model, datum, workspace.budget)
        lines.append(f"oracle: splitting ideal round trip : {'PASS' if ok else 'FAIL'}")
        if datum.algebra.field.is_finite:
            action = derive_point_action(datum)
            fixed = len(action.fixed_points())
            model_count = count_affine_points(
                list(model.algebra0.relations.generators), base,
                len(model.algebra0.variables))
            verdict = "PASS" if fixed == model_count else "FAIL"
            lines.append(
                f"oracle: fixed points {fixed} == model points {model_count} "
                f": {verdict}")
            if verdict == "FAIL":
                raise GaldescentError("point-count oracle failed")
    return lines


def run_restrict(workspace, command, oracle):
    algebra = workspace.algebras[command.name]
    upper = workspace.fields[command.payload["over"]]
    lower = workspace.fields[command.payload["to"]]
    lines = [f"== restrict {command.name} over {command.payload['over']} "
             f"to {command.payload['to']}"]
    if algebra.field != upper:
        _fail_resolution(command.line, command.col,
                         "algebra is not over the named upper field")
    if not isinstance(upper, ExtensionField) or upper.base != lower:
        _fail_resolution(command.line, command.col,
                         "restriction target must be the base of the extension")
    group = workspace._group_for_field(upper, command)
    data = SeparableExtensionData.discover(upper, upper, group)
    result = weil_restrict(algebra, data)
    lines.append(f"decl: field k_{command.name} = {field_decl_text(lower)}")
    lines.append("decl: " + algebra_decl_text(
        f"restrict_{command.name}", f"k_{command.name}", result.restricted))
    for v in algebra.variables:
        lines.append(f"substitution: {v} -> {result.substitution[v].format()}")
    if oracle:
        if lower.is_finite:
            restricted_count = count_affine_points(
                list(result.restricted.relations.generators), lower,
                len(result.restricted.variables))
            source_count = count_affine_points(
                list(algebra.relations.generators), upper,
                len(algebra.variables))
            verdict = "PASS" if restricted_count == source_count else "FAIL"
            lines.append(
                f"oracle: points over {command.payload['to']}: "
                f"{restricted_count} == points of {command.name} over "
                f"{command.payload['over']}: {source_count} : {verdict}")
            conjugate_product_check(result)
            lines.append("oracle: conjugate product count : PASS")
            if verdict == "FAIL":
                raise GaldescentError("point-count oracle failed")
        else:
            etale_splitting(data)
            lines.append(
                f"oracle: etale splitting into {data.degree} factors : PASS")
    return lines


def run_fixed(workspace, command, oracle):
    module = workspace.modules[command.name]
    lines = [f"== fixed {command.name}"]
    validate_action(module)
    space = fixed_subspace(module)
    ext = module.group.ext
    lines.append(f"dimension: {space.dim}")
    for i, vec in enumerate(space.embedding):
        lines.append(f"basis[{i}]: {format_vector(vec, ext)}")
    counit_check(module)
    lines.append("counit: invertible")
    if oracle and ext.is_finite:
        count = 0
        for point in _all_vectors(ext, module.dim):
            if all(module.act(idx, point) == point
                   for idx in range(module.group.order)):
                count += 1
        expected = ext.base.order ** space.dim
        verdict = "PASS" if count == expected else "FAIL"
        lines.append(f"oracle: fixed vectors {count} == {expected} : {verdict}")
        if verdict == "FAIL":
            raise GaldescentError("fixed-vector oracle failed")
    return lines


def _all_vectors(ext, n):
    elems = list(ext.elements())
    idx = [0] * n
    if n == 0:
        yield ()
        return
    while True:
        yield tuple(elems[i] for i in idx)
        k = 0
        while k < n:
            idx[k] += 1
            if idx[k] < len(elems):
                break
            idx[k] = 0
            k += 1
        if k == n:
            return


def run_amitsur(workspace, command, oracle):
    f = workspace.maps[command.name]
    rmax = command.payload["rmax"]
    lines = [f"== amitsur {command.name} rmax={rmax}"]
    report = check_faithfully_flat(f)
    lines.append(f"faithfully flat: yes ({report.mode})")
    lines.append(f"dim B = {f.target.dim}")
    complex_ = amitsur_complex(f, rmax)
    exactness = check_exactness(complex_, expect_first_kernel=1)
    for degree, kernel_rank, image_rank in exactness.degrees:
        lines.append(f"degree {degree}: kernel {kernel_rank} == image {image_rank}")
    lines.append("exact: pass")
    return lines


def run_validate(workspace, command, oracle):
    kind = command.payload["kind"]
    name = command.name
    lines = [f"== validate {name}"]
    if kind == "datum":
        report = validate_datum(workspace.data[name], workspace.budget)
        lines.append("status: valid")
        lines.append(f"pairs checked: {report.pairs_checked}")
    elif kind == "module":
        report = validate_action(workspace.modules[name])
        lines.append("status: valid")
        lines.append(f"pairs checked: {report.pairs_checked}")
    elif kind == "group":
        group = workspace.groups[name]
        lines.append("status: valid")
        lines.append(f"order: {group.order}")
        lines.append(f"full: {'yes' if group.is_full else 'no'}")
    elif kind == "algebra":
        algebra = workspace.algebras[name]
        basis = algebra.relations.groebner(budget=workspace.budget)
        lines.append("status: valid")
        lines.append(f"groebner basis size: {len(basis)}")
        lines.append(f"unit ideal: {'yes' if algebra.is_empty_scheme else 'no'}")
    elif kind == "field":
        field = workspace.fields[name]
        lines.append("status: valid")
        if isinstance(field, ExtensionField):
            lines.append(f"degree: {field.degree}")
            lines.append(f"irreducibility: {field.irreducibility}")
        else:
            lines.append("degree: 1")
    elif kind == "map":
        report = check_faithfully_flat(workspace.maps[name])
        lines.append("status: valid")
        lines.append(f"faithfully flat: yes ({report.mode})")
    else:
        _fail_resolution(command.line, command.col, f"cannot validate a {kind}")
    return lines


HANDLERS = {
    "descend": run_descend,
    "restrict": run_restrict,
    "fixed": run_fixed,
    "amitsur": run_amitsur,
    "validate": run_validate,
}


def run(document, oracle=False, budget=10 ** 6):
    """Execute a parsed document; returns (report text, diagnostics, exit code)."""
    workspace = Workspace(budget)
    try:
        for statement in document.declarations:
            workspace.build(statement)
        command = document.command
        try:
            lines = HANDLERS[command.kind](workspace, command, oracle)
        except CommandFailure:
            raise
        except BudgetExceeded as error:
            _fail_validation(command, error)
        except GaldescentError as error:
            _fail_validation(command, error)
    except CommandFailure as failure:
        return "", [failure.diagnostic], failure.exit_code
    return "\n".join(lines) + "\n", [], 0


def main(argv=None):
    arg_parser = argparse.ArgumentParser(
        prog="galdescent",
        description="Galois descent, Weil restriction and flat descent "
                    "calculator for affine schemes and modules.")
    arg_parser.add_argument("input", help="document file, or - for stdin")
    arg_parser.add_argument("--oracle", action="store_true",
                            help="also run brute-force point/enumeration checks")
    arg_parser.add_argument("--budget", type=int, default=10 ** 6,
                            help="reduction-step budget for the Groebner engine")
    args = arg_parser.parse_args(argv)
    if args.input == "-":
        text = sys.stdin.read()
    else:
        with open(args.input, "r", encoding="utf-8") as handle:
            text = handle.read()
    try:
        document = parse(text)
    except ParseError as error:
        print(error.diagnostic.render(), file=sys.stderr)
        return 2
    report, diagnostics, exit_code = run(document, oracle=args.oracle,
                                         budget=args.budget)
    if report:
        sys.stdout.write(report)
    for diagnostic in diagnostics:
        print(diagnostic.render(), file=sys.stderr)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
