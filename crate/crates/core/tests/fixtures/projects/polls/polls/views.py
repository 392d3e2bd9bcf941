from django.http import Http404, JsonResponse
from django.views.decorators.http import require_GET, require_POST

from .models import Choice, Question


@require_GET
def index(request):
    latest = Question.objects.order_by("-pub_date")[:5]
    return JsonResponse({"questions": [q.question_text for q in latest]})


@require_GET
def detail(request, question_id):
    try:
        question = Question.objects.get(pk=question_id)
    except Question.DoesNotExist:
        raise Http404("Question does not exist")
    return JsonResponse({"id": question.id, "question_text": question.question_text})


@require_POST
def vote(request, question_id):
    try:
        choice = Choice.objects.get(pk=request.POST["choice"], question_id=question_id)
    except (KeyError, Choice.DoesNotExist):
        return JsonResponse({"error": "You didn't select a choice."}, status=400)
    choice.votes += 1
    choice.save()
    return JsonResponse({"id": choice.id, "votes": choice.votes})
