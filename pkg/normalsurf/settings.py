import os
from pathlib import Path

from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent

load_dotenv()

# Quick-start development settings - unsuitable for production
# See https://docs.djangoproject.com/en/3.2/howto/deployment/checklist/

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv(
    "NORMALSURF_SECRET_KEY",
    "django-insecure-n0rm4l-surf4ce-sl1c1ngs-dev-only-3k9#q2x!v7",
)

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = os.getenv("NORMALSURF_DEBUG", "1") == "1"

ALLOWED_HOSTS = ["localhost", "127.0.0.1", "testserver"]


# Application definition

INSTALLED_APPS = [
    "django.contrib.staticfiles",
    "normalsurf.slicing",
]

MIDDLEWARE = [
    "django.middleware.security.SecurityMiddleware",
    "django.middleware.common.CommonMiddleware",
    "django.middleware.clickjacking.XFrameOptionsMiddleware",
]

ROOT_URLCONF = "normalsurf.urls"

TEMPLATES = [
    {
        "BACKEND": "django.template.backends.django.DjangoTemplates",
        "DIRS": [],
        "APP_DIRS": True,
        "OPTIONS": {
            "context_processors": [
                "django.template.context_processors.debug",
                "django.template.context_processors.request",
            ],
        },
    },
]

WSGI_APPLICATION = "normalsurf.wsgi.application"


# Database
# The slicing library keeps no persistent state.

DATABASES = {}


# Internationalization
# https://docs.djangoproject.com/en/3.2/topics/i18n/

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_L10N = False

USE_TZ = True


# Static files (CSS, JavaScript, Images)
# https://docs.djangoproject.com/en/3.2/howto/static-files/

STATIC_URL = "/static/"


# Logging
# https://docs.djangoproject.com/en/3.2/topics/logging/

LOG_LEVEL = os.getenv("NORMALSURF_LOG_LEVEL", "DEBUG" if DEBUG else "INFO")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {"format": "%(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "plain",
        },
    },
    "loggers": {
        "normalsurf": {
            "handlers": ["console"],
            "level": LOG_LEVEL,
            "propagate": True,
        },
    },
}


# Slicing search and export

# worker processes used by `enumerate` when --jobs is not given
SEARCH_JOBS = int(os.getenv("NORMALSURF_SEARCH_JOBS", "1"))
# partitions handed to a worker per task
SEARCH_CHUNK_SIZE = int(os.getenv("NORMALSURF_SEARCH_CHUNK_SIZE", "256"))
# above this many vertices a part-size filter is mandatory
FULL_ENUMERATION_VERTEX_LIMIT = 24
# decimals written for OFF vertex coordinates
OFF_COORDINATE_DIGITS = 6
