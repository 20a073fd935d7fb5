"""
WSGI entry point for gunicorn: ``gunicorn maxpool_theory.wsgi:application``.
"""
import os

from django.core.wsgi import get_wsgi_application

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "maxpool_theory.settings")

application = get_wsgi_application()
