"""
Django settings for the odometer construction project.

For more information on this file, see
https://docs.djangoproject.com/en/4.2/topics/settings/
"""

from pathlib import Path
import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = os.getenv("DEBUG", "False") == "True"

ALLOWED_HOSTS = os.getenv("DJANGO_ALLOWED_HOSTS", "127.0.0.1,localhost,testserver").split(",")

SECRET_KEY = os.getenv("DJANGO_SECRET_KEY", "insecure-local-key")

REST_FRAMEWORK = {
    "DEFAULT_AUTHENTICATION_CLASSES": [],
    "DEFAULT_PERMISSION_CLASSES": [],
    "UNAUTHENTICATED_USER": None,
    "DEFAULT_SCHEMA_CLASS": "drf_spectacular.openapi.AutoSchema",
}

SPECTACULAR_SETTINGS = {
    "TITLE": "Odometer construction API",
    "DESCRIPTION": "Sequences, kappa bounds, stage diagrams and comparison certificates.",
    "VERSION": os.getenv("API_VERSION", "v1"),
}

# Guards and defaults for the construction services
CONSTRUCTION = {
    "LOG_LEVEL": os.getenv("CONSTRUCTION_LOG_LEVEL", "INFO"),
    "BRUTE_FORCE_CAP": int(os.getenv("CONSTRUCTION_BRUTE_FORCE_CAP", "14")),
    "DENSE_MATRIX_GUARD": int(os.getenv("CONSTRUCTION_DENSE_MATRIX_GUARD", "2000")),
    "DENSITY_SPACE_GUARD": int(os.getenv("CONSTRUCTION_DENSITY_SPACE_GUARD", "64")),
    "DENSITY_POINT_GUARD": int(os.getenv("CONSTRUCTION_DENSITY_POINT_GUARD", "2000000")),
    "PATH_ENUMERATION_GUARD": int(os.getenv("CONSTRUCTION_PATH_GUARD", "200000")),
    "LINE_RUN_GUARD": int(os.getenv("CONSTRUCTION_LINE_RUN_GUARD", "1000000")),
    "DOT_DEPTH_GUARD": int(os.getenv("CONSTRUCTION_DOT_DEPTH_GUARD", "4")),
    "INTERTWINE_MAX_STAGE": int(os.getenv("CONSTRUCTION_INTERTWINE_MAX_STAGE", "8")),
    "DEFAULT_CHECK_DEPTH": int(os.getenv("CONSTRUCTION_CHECK_DEPTH", "6")),
    "DEFAULT_SEED": int(os.getenv("CONSTRUCTION_SEED", "20240601")),
    "REPORT_SCHEMA_VERSION": 1,
    "REPORT_DIR": os.getenv("CONSTRUCTION_REPORT_DIR", str(BASE_DIR / "reports")),
}

# Application definition
INSTALLED_APPS = [
    "django.contrib.contenttypes",
    "django.contrib.auth",
    "django.contrib.staticfiles",
    "rest_framework",
    "drf_spectacular",
    "app.construction",
    "app.certificates",
]

MIDDLEWARE = [
    "django.middleware.security.SecurityMiddleware",
    "django.middleware.common.CommonMiddleware",
    "app.middleware.ConstructionErrorMiddleware",
]

ROOT_URLCONF = "app.urls"

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

WSGI_APPLICATION = "app.wsgi.application"

# Nothing is persisted apart from report files
DATABASES = {}

# Logging configuration
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{levelname} {asctime} {name} {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "level": "DEBUG",
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "root": {
        "handlers": ["console"],
        "level": os.getenv("LOG_LEVEL", "WARNING"),
    },
    "loggers": {
        "django": {
            "handlers": ["console"],
            "level": "INFO",
            "propagate": False,
        },
    },
}

# Static files (CSS, JavaScript, Images)
STATIC_URL = "/static/"
STATIC_ROOT = os.path.join(BASE_DIR, "staticfiles")

# Internationalization
LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = True
USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"
