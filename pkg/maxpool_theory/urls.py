"""
URL configuration for maxpool_theory project.

/api/estimators/ and /api/networks/ are read-only analysis endpoints;
/docs/ serves the Swagger UI.
"""
from django.contrib import admin
from django.urls import path, re_path, include
from rest_framework import permissions
from drf_yasg.views import get_schema_view
from drf_yasg import openapi

schema_view = get_schema_view(
    openapi.Info(
        title="Maxpool Theory API",
        default_version="v1",
        description="Certified minimax errors of subpool-max estimators and exact ReLU max networks",
        license=openapi.License(name="MIT License"),
    ),
    public=True,
    permission_classes=(permissions.AllowAny,),
)

urlpatterns = [
    path("admin/", admin.site.urls),
    path("api/estimators/", include("estimators.urls")),
    path("api/networks/", include("networks.urls")),

    # Swagger endpoints
    re_path(r"^docs(?P<format>\.json|\.yaml)$", schema_view.without_ui(cache_timeout=0), name="schema-json"),
    path("docs/", schema_view.with_ui("swagger", cache_timeout=0), name="schema-swagger-ui"),
]
