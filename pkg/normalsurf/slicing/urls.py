from django.urls import path

from . import views

app_name = "slicing"

urlpatterns = [
    path("", views.slice_report, name="report"),
]
