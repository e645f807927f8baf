from normalsurf.slicing.complexes import betti_numbers
from normalsurf.slicing.complexes import euler_characteristic
from normalsurf.slicing.complexes import f_vector
from normalsurf.slicing.complexes import is_closed_pseudomanifold
from normalsurf.slicing.complexes import is_combinatorial_3_manifold
from normalsurf.slicing.complexes import is_connected
from normalsurf.slicing.complexes import is_k_neighborly
from normalsurf.slicing.complexes import lbt_ds_check
from normalsurf.slicing.complexes import orientability
from normalsurf.slicing.exceptions import ComplexError
from normalsurf.slicing.formats import load_complex
from normalsurf.slicing.management.base import SlicingCommand


class Command(SlicingCommand):
    help = "Face counts, manifold verdict, neighborliness and Dehn-Sommerville residuals."

    def add_arguments(self, parser):
        parser.add_argument("complex", help="facet-list file or builtin name")
        parser.add_argument(
            "--no-homology", action="store_true", help="skip the rational Betti numbers"
        )

    def run(self, **options):
        complex_ = load_complex(options["complex"])
        if complex_.dimension != 3 or not complex_.is_pure:
            raise ComplexError(
                f"expected a pure 3-dimensional complex, got dimension {complex_.dimension}"
            )

        manifold = is_combinatorial_3_manifold(complex_)
        lines = [
            f"f-vector: ({','.join(map(str, f_vector(complex_)))})",
            f"euler characteristic: {euler_characteristic(complex_)}",
            f"combinatorial 3-manifold: {manifold.verdict.value} ({manifold.certificate})",
            f"2-neighborly: {'yes' if is_k_neighborly(complex_, 2) else 'no'}",
        ]
        if is_closed_pseudomanifold(complex_) and is_connected(complex_):
            lines.append(f"orientability: {orientability(complex_).value}")
        if not options["no_homology"]:
            lines.append(f"betti numbers: ({','.join(map(str, betti_numbers(complex_)))})")

        check = lbt_ds_check(complex_)
        status = "applicable" if check.applicable else f"not applicable: {check.reason}"
        lines += [
            f"lower bound / Dehn-Sommerville ({status}):",
            f"  f1 - (4 f0 - 10) = {check.lbt_slack}",
            f"  C(f0,2) - f1 = {check.edge_slack}",
            f"  f0 - f1 + f2 - f3 = {check.euler_residual}",
            f"  2 f2 - 4 f3 = {check.ridge_residual}",
        ]
        self.emit("\n".join(lines) + "\n")
