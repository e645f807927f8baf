from django.shortcuts import render
from django.views.decorators.http import require_http_methods

from normalsurf.slicing.bounds import bound_report
from normalsurf.slicing.constructors import builtin
from normalsurf.slicing.constructors import list_builtins
from normalsurf.slicing.exceptions import SlicingError
from normalsurf.slicing.slicing import VertexPartition
from normalsurf.slicing.slicing import slice_complex
from normalsurf.slicing.slicing import surface_type


@require_http_methods(["GET", "POST"])
def slice_report(request):
    context = {"builtins": list_builtins()}
    if request.method == "POST":
        name = request.POST.get("complex", "").strip()
        upper = request.POST.get("v1", "").strip()
        context.update(complex_name=name, v1=upper)

        if not name or not upper:
            context["error"] = "Both a complex and the vertices of V1 are required."
            return render(request, "slicing/report.html", context)

        try:
            labels = [int(token) for token in upper.replace(" ", "").split(",") if token]
            complex_ = builtin(name)
            partition = VertexPartition.from_upper(complex_, labels)
            slicing = slice_complex(complex_, partition)
            report = bound_report(complex_, partition, slicing, homology=False)
        except (SlicingError, ValueError) as exc:
            context["error"] = str(exc)
            return render(request, "slicing/report.html", context, status=400)

        context.update(
            report=report,
            stats=report.stats,
            surface_type=surface_type(report.stats, report.weakly_neighborly),
        )

    return render(request, "slicing/report.html", context)
