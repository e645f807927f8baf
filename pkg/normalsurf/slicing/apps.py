from django.apps import AppConfig


class SlicingConfig(AppConfig):
    name = "normalsurf.slicing"
    verbose_name = "Slicings and normal surfaces"
