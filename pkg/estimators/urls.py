from rest_framework.routers import DefaultRouter
from django.urls import path, include
from .views import EstimatorViewSet, RunManifestViewSet

router = DefaultRouter()
router.register(r'runs', RunManifestViewSet, basename='run')
router.register(r'', EstimatorViewSet, basename='estimator')

urlpatterns = [
    path('', include(router.urls)),
]
