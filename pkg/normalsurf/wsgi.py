"""WSGI entry point serving the slicing report form at /slicing/."""
import os

from django.core.wsgi import get_wsgi_application

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "normalsurf.settings")

application = get_wsgi_application()
